use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ActionError;
use crate::exact_linalg::{mat_mul, mat_pow, BigRational, RationalMatrix};
use crate::variety_models::{GradedClass, VarietyModel};

/// Surjective endomorphism `f`, represented by `f^*` on every codimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EndoAction {
    model: Arc<VarietyModel>,
    pullback: Vec<RationalMatrix>,
    degree: BigInt,
}

/// A failed [`EndoAction`] invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Shape {
        codim: usize,
        expected: usize,
        found: (usize, usize),
    },
    MissingCodimensions {
        expected: usize,
        found: usize,
    },
    UnitNotFixed {
        found: RationalMatrix,
    },
    TopNotDegree {
        degree: BigInt,
        found: RationalMatrix,
    },
    NotRingHomomorphism {
        left: (usize, usize),
        right: (usize, usize),
    },
    NotInvertible {
        codim: usize,
    },
    NonPositiveDegree {
        degree: BigInt,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape { codim, expected, found } => write!(
                f,
                "pullback[{codim}] must be {expected}x{expected}, found {}x{}",
                found.0, found.1
            ),
            Self::MissingCodimensions { expected, found } => {
                write!(f, "expected {expected} pullback matrices, found {found}")
            }
            Self::UnitNotFixed { found } => write!(f, "pullback[0] must fix the unit, found {found}"),
            Self::TopNotDegree { degree, found } => {
                write!(f, "pullback[d] must be multiplication by the degree {degree}, found {found}")
            }
            Self::NotRingHomomorphism { left, right } => write!(
                f,
                "f*(x ∪ y) != f*x ∪ f*y for basis x = {left:?}, y = {right:?} (codim, index)"
            ),
            Self::NotInvertible { codim } => write!(f, "pullback[{codim}] is not invertible"),
            Self::NonPositiveDegree { degree } => write!(f, "degree must be >= 1, found {degree}"),
        }
    }
}

impl EndoAction {
    /// Unvalidated constructor; see [`EndoAction::validated`].
    pub fn new(model: Arc<VarietyModel>, pullback: Vec<RationalMatrix>, degree: BigInt) -> Self {
        Self {
            model,
            pullback,
            degree,
        }
    }

    pub fn validated(
        model: Arc<VarietyModel>,
        pullback: Vec<RationalMatrix>,
        degree: BigInt,
    ) -> Result<Self, ActionError> {
        let action = Self::new(model, pullback, degree);
        action.validate()?;
        Ok(action)
    }

    pub fn identity(model: Arc<VarietyModel>) -> Self {
        let pullback = model.ranks().iter().map(|&r| RationalMatrix::identity(r)).collect();
        Self::new(model, pullback, BigInt::one())
    }

    pub fn model(&self) -> &Arc<VarietyModel> {
        &self.model
    }

    pub fn pullback(&self, codim: usize) -> Result<&RationalMatrix, ActionError> {
        self.pullback.get(codim).ok_or(ActionError::CodimOutOfRange {
            codim,
            dim: self.model.dim(),
        })
    }

    pub fn pullbacks(&self) -> &[RationalMatrix] {
        &self.pullback
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    /// Checks every invariant exactly and reports all failures.
    pub fn validate(&self) -> Result<(), ActionError> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ActionError::Invalid(violations))
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ranks = self.model.ranks();
        let d = self.model.dim();
        if !self.degree.is_positive() {
            out.push(Violation::NonPositiveDegree {
                degree: self.degree.clone(),
            });
        }
        if self.pullback.len() != ranks.len() {
            out.push(Violation::MissingCodimensions {
                expected: ranks.len(),
                found: self.pullback.len(),
            });
            return out;
        }
        let mut shapes_ok = true;
        for (q, (m, &r)) in self.pullback.iter().zip(ranks).enumerate() {
            if m.rows() != r || m.cols() != r {
                shapes_ok = false;
                out.push(Violation::Shape {
                    codim: q,
                    expected: r,
                    found: (m.rows(), m.cols()),
                });
            }
        }
        if !shapes_ok {
            return out;
        }
        if self.pullback[0] != RationalMatrix::identity(1) {
            out.push(Violation::UnitNotFixed {
                found: self.pullback[0].clone(),
            });
        }
        let degree = BigRational::from_integer(self.degree.clone());
        if self.pullback[d] != RationalMatrix::scalar(ranks[d], degree) {
            out.push(Violation::TopNotDegree {
                degree: self.degree.clone(),
                found: self.pullback[d].clone(),
            });
        }
        for q1 in 1..=d {
            for q2 in q1..=d - q1 {
                for i in 0..ranks[q1] {
                    for j in 0..ranks[q2] {
                        let x = self.model.basis(q1, i);
                        let y = self.model.basis(q2, j);
                        let lhs = self.apply_unchecked(&self.model.cup(&x, &y).expect("basis conforms"));
                        let rhs = self
                            .model
                            .cup(&self.apply_unchecked(&x), &self.apply_unchecked(&y))
                            .expect("basis conforms");
                        if lhs != rhs {
                            out.push(Violation::NotRingHomomorphism {
                                left: (q1, i),
                                right: (q2, j),
                            });
                        }
                    }
                }
            }
        }
        for (q, m) in self.pullback.iter().enumerate() {
            if m.determinant().map_or(true, |det| det.is_zero()) {
                out.push(Violation::NotInvertible { codim: q });
            }
        }
        out
    }

    /// `f^* x` for a graded class.
    pub fn apply(&self, x: &GradedClass) -> Result<GradedClass, ActionError> {
        if !x.conforms_to(self.model.ranks()) {
            return Err(ActionError::Model(crate::variety_models::ModelError::RankMismatch {
                what: "class".into(),
                expected: self.model.total_rank(),
                found: x.shape().iter().sum(),
            }));
        }
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &GradedClass) -> GradedClass {
        GradedClass::from_parts(
            self.pullback
                .iter()
                .zip(x.parts())
                .map(|(m, v)| m.mul_vec(v).expect("shape checked"))
                .collect(),
        )
    }

    /// `self ∘ inner`, whose pullback is `inner^* ∘ self^*`.
    pub fn compose(&self, inner: &EndoAction) -> Result<EndoAction, ActionError> {
        if self.model != inner.model {
            return Err(ActionError::ModelMismatch);
        }
        let pullback = inner
            .pullback
            .iter()
            .zip(&self.pullback)
            .map(|(g, f)| mat_mul(g, f))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(self.model.clone(), pullback, &self.degree * &inner.degree))
    }

    /// `f^n`.
    pub fn iterate(&self, n: u32) -> Result<EndoAction, ActionError> {
        let pullback = self
            .pullback
            .iter()
            .map(|m| mat_pow(m, u64::from(n)))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(
            self.model.clone(),
            pullback,
            num_traits::pow(self.degree.clone(), n as usize),
        ))
    }
}
