use num_traits::{One, Zero};
use serde::Deserialize;

use super::RrError;
use crate::exact_linalg::rational::{literals, RationalLiteral};
use crate::exact_linalg::BigRational;
use crate::variety_models::{GradedClass, ModelError, VarietyModel};

/// Summand `O(D)[shift]^{⊕ multiplicity}`; `divisor` holds the codim-1 coordinates of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KTerm {
    pub divisor: Vec<BigRational>,
    pub shift: i64,
    pub multiplicity: u32,
}

/// Formal direct sum of shifted line bundles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct KClassSum {
    terms: Vec<KTerm>,
}

/// Config literal for a [`KTerm`]: `{ coeffs = [1, "1/2"], shift = 0, mult = 1 }`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KTermConfig {
    pub coeffs: Vec<RationalLiteral>,
    #[serde(default)]
    pub shift: i64,
    #[serde(default = "one_u32")]
    pub mult: u32,
}

fn one_u32() -> u32 {
    1
}

impl From<&KTermConfig> for KTerm {
    fn from(c: &KTermConfig) -> Self {
        KTerm {
            divisor: literals(&c.coeffs),
            shift: c.shift,
            multiplicity: c.mult,
        }
    }
}

impl KClassSum {
    pub fn new(terms: Vec<KTerm>) -> Result<Self, RrError> {
        if terms.iter().any(|t| t.multiplicity == 0) {
            return Err(RrError::ZeroMultiplicity);
        }
        Ok(Self { terms })
    }

    pub fn line_bundle(divisor: Vec<BigRational>) -> Self {
        Self {
            terms: vec![KTerm {
                divisor,
                shift: 0,
                multiplicity: 1,
            }],
        }
    }

    /// `⊕_{i ∈ range} O(i·D)`.
    pub fn twists_of(divisor: &[BigRational], range: impl IntoIterator<Item = i64>) -> Self {
        Self {
            terms: range
                .into_iter()
                .map(|i| KTerm {
                    divisor: divisor.iter().map(|x| x * BigRational::from_integer(i.into())).collect(),
                    shift: 0,
                    multiplicity: 1,
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[KTerm] {
        &self.terms
    }

    /// `M[j]`.
    pub fn shifted(&self, j: i64) -> Self {
        self.map_terms(|t| KTerm {
            shift: t.shift + j,
            ..t.clone()
        })
    }

    /// `M ⊗ O(D)`.
    pub fn twisted(&self, divisor: &[BigRational]) -> Self {
        self.map_terms(|t| KTerm {
            divisor: t.divisor.iter().zip(divisor).map(|(a, b)| a + b).collect(),
            ..t.clone()
        })
    }

    pub fn map_terms(&self, f: impl FnMut(&KTerm) -> KTerm) -> Self {
        Self {
            terms: self.terms.iter().map(f).collect(),
        }
    }

    /// `Σ (-1)^shift · mult · ch(O(D))`.
    pub fn chern_class(&self, model: &VarietyModel) -> Result<GradedClass, RrError> {
        let mut total = model.zero();
        for t in &self.terms {
            let ch = chern_character(model, &model.divisor(&t.divisor)?)?;
            let sign = if t.shift.rem_euclid(2) == 0 { 1 } else { -1 };
            let weight = BigRational::from_integer((sign * i64::from(t.multiplicity)).into());
            total = total.add(&ch.scale(&weight));
        }
        Ok(total)
    }
}

/// `ch(O(D)) = exp(D)` truncated at the top codimension.
pub fn chern_character(model: &VarietyModel, divisor: &GradedClass) -> Result<GradedClass, RrError> {
    if !divisor.conforms_to(model.ranks()) {
        return Err(RrError::Model(ModelError::RankMismatch {
            what: "divisor".into(),
            expected: model.total_rank(),
            found: divisor.shape().iter().sum(),
        }));
    }
    if !divisor.is_concentrated_in(1) {
        return Err(RrError::NotDivisor);
    }
    let mut total = model.unit();
    let mut power = model.unit();
    let mut factorial = BigRational::one();
    for q in 1..=model.dim() {
        power = model.cup(&power, divisor)?;
        factorial *= BigRational::from_integer(q.into());
        if power.is_zero() {
            break;
        }
        total = total.add(&power.scale(&(BigRational::one() / &factorial)));
    }
    Ok(total)
}

/// `χ(u, v) = ∫ u^∨ · v · td(X)` on Chern-character vectors.
pub fn euler_pairing(model: &VarietyModel, u: &GradedClass, v: &GradedClass) -> Result<BigRational, RrError> {
    let uv = model.cup(&u.dual(), v)?;
    Ok(model.integrate(&model.cup(&uv, model.todd())?)?)
}

/// `χ(M, N)` summed over summand pairs, each weighted by multiplicities and `(-1)^{shift_N - shift_M}`.
pub fn euler_form(model: &VarietyModel, m: &KClassSum, n: &KClassSum) -> Result<BigRational, RrError> {
    let mut total = BigRational::zero();
    for a in m.terms() {
        let cha = chern_character(model, &model.divisor(&a.divisor)?)?;
        for b in n.terms() {
            let chb = chern_character(model, &model.divisor(&b.divisor)?)?;
            let mut chi = euler_pairing(model, &cha, &chb)?;
            chi *= BigRational::from_integer((i64::from(a.multiplicity) * i64::from(b.multiplicity)).into());
            if (b.shift - a.shift).rem_euclid(2) == 1 {
                chi = -chi;
            }
            total += chi;
        }
    }
    Ok(total)
}
