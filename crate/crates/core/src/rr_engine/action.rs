use num_traits::One;

use super::kclass::chern_character;
use super::RrError;
use crate::endo_actions::EndoAction;
use crate::exact_linalg::{mat_mul, spectral_radius, BigRational, RationalMatrix, SpectralInterval};
use crate::variety_models::{GradedClass, VarietyModel};

/// `[F]` on `N(X)_ℚ` in Chern-character coordinates, codimension-major.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericalAction {
    matrix: RationalMatrix,
}

impl NumericalAction {
    pub fn new(matrix: RationalMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn apply(&self, model: &VarietyModel, x: &GradedClass) -> Result<GradedClass, RrError> {
        let flat = self.matrix.mul_vec(&x.flatten())?;
        Ok(GradedClass::from_flat(model.ranks(), &flat))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &NumericalAction) -> Result<NumericalAction, RrError> {
        Ok(Self::new(mat_mul(&self.matrix, &inner.matrix)?))
    }

    pub fn spectral_radius(&self, tol: &BigRational) -> Result<SpectralInterval, RrError> {
        Ok(spectral_radius(&self.matrix, tol)?)
    }
}

/// `[Lf^*]`: block diagonal in the pullback matrices.
pub fn endo_k_action(action: &EndoAction) -> NumericalAction {
    NumericalAction::new(RationalMatrix::block_diagonal(action.pullbacks()))
}

/// `[- ⊗ O(L′)]`: multiplication by `ch(O(L′))`.
pub fn twist_action(model: &VarietyModel, divisor: &GradedClass) -> Result<NumericalAction, RrError> {
    let ch = chern_character(model, divisor)?;
    let n = model.total_rank();
    let columns: Vec<Vec<BigRational>> = model
        .ranks()
        .iter()
        .enumerate()
        .flat_map(|(q, &r)| (0..r).map(move |i| (q, i)))
        .map(|(q, i)| model.cup(&ch, &model.basis(q, i)).map(|c| c.flatten()))
        .collect::<Result<_, _>>()?;
    let data = (0..n).flat_map(|i| columns.iter().map(move |c| c[i].clone())).collect();
    Ok(NumericalAction::new(RationalMatrix::new(n, n, data)?))
}

/// `[Lf^*(- ⊗ O(L′))[a]] = (-1)^a [f^*] [⊗ O(L′)]`.
pub fn autoeq_action(f: &EndoAction, divisor: &GradedClass, shift: i64) -> Result<NumericalAction, RrError> {
    if !f.degree().is_one() {
        return Err(RrError::DegreeNotOne {
            degree: f.degree().to_string(),
        });
    }
    let mut m = endo_k_action(f).compose(&twist_action(f.model(), divisor)?)?;
    if shift.rem_euclid(2) == 1 {
        m = NumericalAction::new(m.matrix.scale(&-BigRational::one()));
    }
    Ok(m)
}
