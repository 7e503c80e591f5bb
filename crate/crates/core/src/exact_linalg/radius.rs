//! Certified enclosure of the largest root modulus of a rational polynomial.
//!
//! Bisection on `r` with an exact predicate "every root satisfies `|z| < r`",
//! decided by the Schur-Cohn recursion on `p(r z)`. The starting bracket is
//! `[0, 1 + max |a_i|]`. After bisection, small rationals inside the bracket
//! are tested as exact real roots so that integral radii come back with an
//! exact lower end.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::charpoly::{char_poly, eval_poly, CharPoly};
use super::matrix::RationalMatrix;
use super::rational::{format_rational, ln_abs, primitive_part, to_f64, BigRational};
use super::LinalgError;

/// Closed interval `[lower, upper]` known to contain a spectral radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralInterval {
    lower: BigRational,
    upper: BigRational,
}

impl SpectralInterval {
    pub fn new(lower: BigRational, upper: BigRational) -> Result<Self, LinalgError> {
        if lower.is_negative() || lower > upper {
            return Err(LinalgError::InvalidInterval);
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// `(ln lower, ln upper)`; the lower end is `-inf` for a zero bound.
    pub fn ln_bounds(&self) -> (f64, f64) {
        (ln_abs(&self.lower), ln_abs(&self.upper))
    }

    pub fn ln_midpoint(&self) -> f64 {
        ln_abs(&self.midpoint())
    }

    /// Enclosure of the `k`-th power of the enclosed value.
    pub fn pow(&self, k: u32) -> Self {
        Self {
            lower: num_traits::pow(self.lower.clone(), k as usize),
            upper: num_traits::pow(self.upper.clone(), k as usize),
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lower: self.lower.clone().min(other.lower.clone()),
            upper: self.upper.clone().max(other.upper.clone()),
        }
    }

    /// Interval of `max(a, b)` for `a ∈ self`, `b ∈ other`.
    pub fn max(&self, other: &Self) -> Self {
        Self {
            lower: self.lower.clone().max(other.lower.clone()),
            upper: self.upper.clone().max(other.upper.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lower: String,
    pub upper: String,
}

impl From<&SpectralInterval> for IntervalRecord {
    fn from(iv: &SpectralInterval) -> Self {
        Self {
            lower: format_rational(&iv.lower),
            upper: format_rational(&iv.upper),
        }
    }
}

/// Returns an interval of width at most `tol` containing `max |root|` of `p`.
pub fn root_radius(p: &CharPoly, tol: &BigRational) -> Result<SpectralInterval, LinalgError> {
    if !tol.is_positive() {
        return Err(LinalgError::NonPositiveTolerance);
    }
    let coeffs = p.coefficients();
    if p.is_monomial() {
        return SpectralInterval::new(BigRational::zero(), BigRational::zero());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = BigRational::zero();
    let mut hi = p.cauchy_bound();
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if roots_inside_radius(coeffs, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if let Some(exact) = exact_real_root_modulus(coeffs, &lo, &hi) {
        lo = exact;
    }
    SpectralInterval::new(lo, hi)
}

/// `root_radius(char_poly(m), tol)`.
pub fn spectral_radius(m: &RationalMatrix, tol: &BigRational) -> Result<SpectralInterval, LinalgError> {
    root_radius(&char_poly(m)?, tol)
}

/// Whether every root of the polynomial lies in the open disc `|z| < r`.
pub fn roots_inside_radius(coeffs: &[BigRational], r: &BigRational) -> bool {
    let mut power = BigRational::from_integer(BigInt::from(1));
    let mut scaled = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        scaled.push(c * &power);
        power *= r;
    }
    schur_cohn_stable(primitive_part(&scaled))
}

/// Schur-Cohn test for the open unit disc. For `|a_0| < |a_n|` the reduction
/// `(a_n p(z) - a_0 z^n p(1/z)) / z` keeps the property "all roots inside".
fn schur_cohn_stable(mut coeffs: Vec<BigRational>) -> bool {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    loop {
        let n = match coeffs.len() {
            0 => return false,
            len => len - 1,
        };
        if n == 0 {
            return true;
        }
        let a0 = coeffs[0].clone();
        let an = coeffs[n].clone();
        if a0.abs() >= an.abs() {
            return false;
        }
        let reduced: Vec<BigRational> = (0..n)
            .map(|k| &an * &coeffs[k + 1] - &a0 * &coeffs[n - 1 - k])
            .collect();
        coeffs = primitive_part(&reduced);
    }
}

/// Looks for a simple rational `c ∈ [lo, hi]` with `p(c) = 0` or `p(-c) = 0`.
fn exact_real_root_modulus(coeffs: &[BigRational], lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    let mut best: Option<BigRational> = None;
    for den in 1..=16i64 {
        let d = BigRational::from_integer(BigInt::from(den));
        let c = (&mid * &d).round() / &d;
        if &c < lo || &c > hi || c.is_negative() {
            continue;
        }
        let hit = eval_poly(coeffs, &c).is_zero() || eval_poly(coeffs, &-c.clone()).is_zero();
        if hit && best.as_ref().is_none_or(|b| &c > b) {
            best = Some(c);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rational::{int, ten_pow_neg};

    fn poly(c: &[i64]) -> CharPoly {
        CharPoly::from_coefficients(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    /// Plain floating bisection on the positive real root of x^2 - x - 1.
    fn golden_by_bisection() -> f64 {
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid - mid - 1.0 < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn golden_ratio() {
        let tol = ten_pow_neg(9);
        let iv = root_radius(&poly(&[-1, -1, 1]), &tol).unwrap();
        assert!(iv.width() <= tol);
        let phi = golden_by_bisection();
        assert!(to_f64(iv.lower()) <= phi + 1e-15 && phi - 1e-15 <= to_f64(iv.upper()));
        assert!((phi - 1.6180339887).abs() < 1e-10);
    }

    #[test]
    fn unipotent_has_exact_lower_end() {
        let tol = ten_pow_neg(9);
        let iv = root_radius(&poly(&[1, -2, 1]), &tol).unwrap();
        assert_eq!(iv.lower(), &int(1));
        assert!(iv.upper() <= &(int(1) + &tol));
    }

    #[test]
    fn plus_minus_two() {
        let tol = ten_pow_neg(9);
        let iv = root_radius(&poly(&[-4, 0, 1]), &tol).unwrap();
        assert_eq!(iv.lower(), &int(2));
        assert!(iv.width() <= tol);
    }

    #[test]
    fn complex_roots_are_enclosed() {
        // x^2 + 4 has roots ±2i; no real root to snap to.
        let tol = ten_pow_neg(9);
        let iv = root_radius(&poly(&[4, 0, 1]), &tol).unwrap();
        assert!(iv.contains(&int(2)));
        assert!(iv.width() <= tol);
    }

    #[test]
    fn matrix_radii() {
        let tol = ten_pow_neg(9);
        let iv = spectral_radius(&m(&[&[2, 0], &[0, 1]]), &tol).unwrap();
        assert_eq!(iv.lower(), &int(2));
        let iv = spectral_radius(&m(&[&[1, 0], &[1, 1]]), &tol).unwrap();
        assert!(iv.contains(&int(1)) && iv.width() <= tol);
        let iv = spectral_radius(&m(&[&[0, 1], &[0, 0]]), &tol).unwrap();
        assert_eq!(iv.upper(), &int(0));
    }

    #[test]
    fn boundary_root_is_not_inside() {
        // roots 1 and 3: radius 3 fails, anything above passes
        let c: Vec<BigRational> = [3, -4, 1].iter().map(|&v| int(v)).collect();
        assert!(!roots_inside_radius(&c, &int(3)));
        assert!(roots_inside_radius(&c, &crate::exact_linalg::rational::rational(301, 100)));
        assert!(!roots_inside_radius(&c, &int(1)));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert_eq!(
            root_radius(&poly(&[-1, 1]), &int(0)),
            Err(LinalgError::NonPositiveTolerance)
        );
    }
}
