use num_traits::Zero;

use super::EntropyError;
use crate::endo_actions::EndoAction;
use crate::exact_linalg::rational::ln_abs;
use crate::exact_linalg::{mat_pow, BigRational};
use crate::fit::{tail_slope, MIN_TAIL_TERMS};
use crate::rr_engine::{euler_pairing, KClassSum};
use crate::variety_models::{GradedClass, VarietyModel};

pub const DEFAULT_N_MAX: u32 = 48;

/// `a_n = log|χ_n|` (or `log δ′`) for `n = 1..=n_max`, with the exact values when available.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySequence {
    pub descriptor: String,
    pub terms: Vec<(u32, f64)>,
    pub exact: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub h: f64,
    pub error_bar: f64,
    pub max_residual: f64,
}

/// `G = ⊕_{i=1}^{d+1} O(i·c1L)` and `G* = ⊕ O(-i·c1L)`.
pub(crate) fn generators(model: &VarietyModel) -> (KClassSum, KClassSum) {
    let l = model.c1l().part(1).to_vec();
    let top = model.dim() as i64 + 1;
    (
        KClassSum::twists_of(&l, 1..=top),
        KClassSum::twists_of(&l, (1..=top).map(|i| -i)),
    )
}

fn chern_generators(model: &VarietyModel) -> Result<(GradedClass, GradedClass), EntropyError> {
    let (g, g_dual) = generators(model);
    Ok((g.chern_class(model)?, g_dual.chern_class(model)?))
}

/// `χ_n = χ(G, (Lf^*)^n G*)` for `n = 1..=n_max`, by iterating `f^*` on `ch(G*)`.
pub fn chi_sequence(action: &EndoAction, n_max: u32) -> Result<EntropySequence, EntropyError> {
    let model = action.model();
    let (ch_g, mut v) = chern_generators(model)?;
    let mut terms = Vec::with_capacity(n_max as usize);
    let mut exact = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        v = action.apply(&v)?;
        let chi = euler_pairing(model, &ch_g, &v)?;
        if chi.is_zero() {
            return Err(EntropyError::ZeroChi { n });
        }
        terms.push((n, ln_abs(&chi)));
        exact.push(chi);
    }
    Ok(EntropySequence {
        descriptor: format!("chi(G, (Lf*)^n G*) on {}", model.name()),
        terms,
        exact,
    })
}

/// `χ_n` recomputed from fresh matrix powers.
pub fn chi_term(action: &EndoAction, n: u32) -> Result<BigRational, EntropyError> {
    let model = action.model();
    let (ch_g, v) = chern_generators(model)?;
    let parts = action
        .pullbacks()
        .iter()
        .zip(v.parts())
        .map(|(m, p)| mat_pow(m, u64::from(n))?.mul_vec(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(euler_pairing(model, &ch_g, &GradedClass::from_parts(parts))?)
}

/// `lim a_n / n` by tail regression on `a_n ≈ h·n + p·log n + b_0 + b_1/n + b_2/n²`.
pub fn extract_limit(seq: &EntropySequence) -> Result<LimitEstimate, EntropyError> {
    if seq.terms.len() < MIN_TAIL_TERMS {
        return Err(EntropyError::TooFewTerms { len: seq.terms.len() });
    }
    let fit = tail_slope(&seq.terms).ok_or(EntropyError::TooFewTerms { len: seq.terms.len() })?;
    Ok(LimitEstimate {
        h: fit.slope,
        error_bar: fit.error_bar,
        max_residual: fit.max_residual,
    })
}
