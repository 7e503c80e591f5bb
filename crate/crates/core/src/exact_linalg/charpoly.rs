use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{mat_mul, RationalMatrix};
use super::rational::{format_rational, BigRational};
use super::LinalgError;

/// Monic characteristic polynomial, coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigRational>,
}

impl CharPoly {
    /// Wraps lowest-first coefficients; the leading one must equal 1.
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Result<Self, LinalgError> {
        match coeffs.last() {
            Some(lead) if lead.is_one() && coeffs.len() >= 2 => Ok(Self { coeffs }),
            _ => Err(LinalgError::NotMonic),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        eval_poly(&self.coeffs, x)
    }

    /// Substitutes a square matrix (Horner). Cayley-Hamilton makes this zero
    /// for the source matrix.
    pub fn eval_matrix(&self, m: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        m.require_square()?;
        let n = m.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = mat_mul(&acc, m)?.add(&RationalMatrix::scalar(n, c.clone()))?;
        }
        Ok(acc)
    }

    /// Cauchy bound `1 + max |a_i|` over the non-leading coefficients.
    pub fn cauchy_bound(&self) -> BigRational {
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero);
        BigRational::one() + max
    }

    /// True for `x^n`, i.e. a nilpotent source matrix.
    pub fn is_monomial(&self) -> bool {
        self.coeffs[..self.degree()].iter().all(Zero::is_zero)
    }
}

pub(crate) fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !magnitude.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&magnitude))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}

/// Characteristic polynomial `det(xI - m)` by Faddeev-LeVerrier.
pub fn char_poly(m: &RationalMatrix) -> Result<CharPoly, LinalgError> {
    m.require_square()?;
    let n = m.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // aux_k = m · aux_{k-1} + c_{n-k+1} I, with aux_0 = 0
    let mut aux = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        aux = mat_mul(m, &aux)?.add(&RationalMatrix::scalar(n, coeffs[n - k + 1].clone()))?;
        let trace = mat_mul(m, &aux)?.trace()?;
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    Ok(CharPoly { coeffs })
}
