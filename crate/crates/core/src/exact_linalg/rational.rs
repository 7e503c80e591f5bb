//! Helpers around [`BigRational`]: parsing, rendering and logarithms of
//! values far outside the `f64` range.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` exactly. Floating-point notation is rejected.
pub fn parse_rational(literal: &str) -> Result<BigRational, ParseRationalError> {
    let trimmed = literal.trim();
    let err = |reason| ParseRationalError {
        literal: literal.to_string(),
        reason,
    };
    if trimmed.is_empty() {
        return Err(err("empty literal"));
    }
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let den = BigInt::from_str(den).map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Config literal for an exact rational: a TOML integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLiteral(pub BigRational);

impl<'de> serde::Deserialize<'de> for RationalLiteral {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Self(int(v))),
            Raw::Text(s) => parse_rational(&s).map(Self).map_err(serde::de::Error::custom),
        }
    }
}

impl serde::Serialize for RationalLiteral {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

/// Unwraps nested literal vectors.
pub fn literals(values: &[RationalLiteral]) -> Vec<BigRational> {
    values.iter().map(|v| v.0.clone()).collect()
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// `10^-exp` as an exact rational.
pub fn ten_pow_neg(exp: u32) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), exp as usize))
}

/// Natural log of `|n|`; `-inf` for zero. Exact bits are used beyond the `f64` range.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let magnitude = n.magnitude();
    let bits = magnitude.bits();
    if bits <= 960 {
        return magnitude.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (magnitude >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `|x|`.
pub fn ln_abs(x: &BigRational) -> f64 {
    ln_abs_bigint(x.numer()) - ln_abs_bigint(x.denom())
}

/// Nearest `f64`, saturating to `±inf` outside the range.
pub fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let direct = x.numer().to_f64().zip(x.denom().to_f64());
    if let Some((n, d)) = direct {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let sign = if x.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    sign * ln_abs(x).exp()
}

/// Multiplies through by the lcm of denominators and divides by the content,
/// returning an integer vector with gcd 1 and a positive last entry.
/// The zero vector is returned unchanged.
pub fn primitive_part(values: &[BigRational]) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if content.is_zero() {
        return values.to_vec();
    }
    if ints.iter().rev().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        content = -content;
    }
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &content))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 4/-8 ").unwrap(), rational(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_reduced_forms() {
        assert_eq!(format_rational(&rational(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-5)), "-5");
    }

    #[test]
    fn logs_of_huge_values() {
        let big = num_traits::pow(BigInt::from(3), 2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_abs_bigint(&big) - expected).abs() < 1e-9 * expected);
        let x = BigRational::new(BigInt::one(), big);
        assert!((ln_abs(&x) + expected).abs() < 1e-9 * expected);
        assert_eq!(ln_abs(&int(0)), f64::NEG_INFINITY);
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let v = vec![rational(1, 2), rational(-3, 4), int(0)];
        assert_eq!(primitive_part(&v), vec![int(-2), int(3), int(0)]);
    }
}
