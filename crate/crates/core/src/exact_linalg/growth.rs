use super::matrix::{mat_mul, RationalMatrix};
use super::radius::{spectral_radius, SpectralInterval};
use super::rational::{ln_abs, BigRational};
use super::LinalgError;
use crate::fit::least_squares;

pub const DEFAULT_GROWTH_N_MAX: u32 = 64;

/// Largest slope distance from an integer accepted when rounding the fitted
/// `log n` coefficient to a Jordan block size.
pub const MULTIPLICITY_SLACK: f64 = 0.25;

/// Spectral radius together with the size of the largest Jordan block among
/// eigenvalues of maximal modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthOrder {
    pub radius: SpectralInterval,
    pub multiplicity: usize,
}

/// Estimates `(ρ, m)` with `‖M^n‖₁ ~ n^(m-1) ρ^n`.
///
/// The radius is certified; the multiplicity comes from a least-squares fit of
/// `log ‖M^n‖₁ - n log ρ` against `log n`, `1` and `1/n` on `n ∈ [n_max/2, n_max]`.
pub fn growth_order(m: &RationalMatrix, tol: &BigRational, n_max: u32) -> Result<GrowthOrder, LinalgError> {
    let radius = spectral_radius(m, tol)?;
    if radius.upper() == &BigRational::from_integer(0.into()) {
        return Err(LinalgError::DegenerateGrowth);
    }
    if n_max < 8 {
        return Err(LinalgError::WindowTooShort { n_max });
    }
    let ln_r = radius.ln_midpoint();
    let start = n_max / 2;
    let mut power = m.clone();
    let mut ln_n = Vec::new();
    let mut inv_n = Vec::new();
    let mut y = Vec::new();
    for n in 1..=n_max {
        if n > 1 {
            power = mat_mul(&power, m)?;
        }
        if n >= start {
            let nf = f64::from(n);
            ln_n.push(nf.ln());
            inv_n.push(1.0 / nf);
            y.push(ln_abs(&power.one_norm()) - nf * ln_r);
        }
    }
    let ones = vec![1.0; y.len()];
    let fit = least_squares(&[ln_n, ones, inv_n], &y).ok_or(LinalgError::AmbiguousGrowth { slope: f64::NAN })?;
    let slope = fit.coefficients[0];
    let rounded = slope.round();
    if (slope - rounded).abs() >= MULTIPLICITY_SLACK || rounded < 0.0 || rounded as usize + 1 > m.rows() {
        return Err(LinalgError::AmbiguousGrowth { slope });
    }
    Ok(GrowthOrder {
        radius,
        multiplicity: rounded as usize + 1,
    })
}
