use serde::Serialize;

use crate::exact_linalg::rational::ten_pow_neg;
use crate::exact_linalg::BigRational;

/// Verdict tolerance for spectral and sequence equalities, and the looser one
/// for comparisons against the extracted entropy limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tol: f64,
    pub h_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { tol: 1e-6, h_tol: 1e-4 }
    }
}

/// Width used for certified spectral intervals: `10^-9`, or two decades below `tol` if that is finer.
pub fn spectral_tolerance(tol: f64) -> BigRational {
    let decades = if tol > 0.0 { (-tol.log10()).ceil() as i64 + 2 } else { 9 };
    ten_pow_neg(decades.clamp(9, 60) as u32)
}

/// One equality check; `pass` holds exactly when `difference <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn equality(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::with_difference(name, lhs, rhs, (lhs - rhs).abs(), tolerance)
    }

    pub fn with_difference(name: &str, lhs: f64, rhs: f64, difference: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            difference,
            tolerance,
            pass: difference <= tolerance,
        }
    }
}
