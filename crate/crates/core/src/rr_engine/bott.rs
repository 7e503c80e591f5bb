use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{KClassSum, RrError};
use crate::exact_linalg::rational::{format_rational, ln_abs_bigint};

/// `C(n, k)` for `n >= 0`.
fn binomial(n: &BigInt, k: usize) -> BigUint {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc.to_biguint().unwrap_or_default()
}

/// `dim H^m(P^d, O(a))`.
pub fn bott_h_dim(d: usize, a: &BigInt, m: usize) -> Result<BigUint, RrError> {
    if m > d {
        return Err(RrError::CohomologyDegree { m, d });
    }
    let dd = BigInt::from(d);
    if m == 0 && !a.is_negative() {
        Ok(binomial(&(a + &dd), d))
    } else if m == d && *a < -(&dd) {
        Ok(binomial(&(-a - 1), d))
    } else {
        Ok(BigUint::zero())
    }
}

fn degree_on_pd(term_divisor: &[crate::exact_linalg::BigRational]) -> Result<BigInt, RrError> {
    match term_divisor {
        [x] if x.is_integer() => Ok(x.to_integer()),
        [x] => Err(RrError::NonIntegralDegree(format_rational(x))),
        _ => Err(RrError::NotProjectiveSpace),
    }
}

/// `Σ dim Hom(M, N[m])` grouped by `m`, exactly, on `P^d`.
pub fn hom_dimensions(d: usize, m: &KClassSum, n: &KClassSum) -> Result<BTreeMap<i64, BigUint>, RrError> {
    let mut out: BTreeMap<i64, BigUint> = BTreeMap::new();
    for a in m.terms() {
        let da = degree_on_pd(&a.divisor)?;
        for b in n.terms() {
            let db = degree_on_pd(&b.divisor)?;
            let twist = &db - &da;
            let mult = BigUint::from(a.multiplicity) * BigUint::from(b.multiplicity);
            for j in 0..=d {
                let h = bott_h_dim(d, &twist, j)?;
                if h.is_zero() {
                    continue;
                }
                // Hom(O(a)[s], O(b)[s'][m]) = H^{m + s' - s}(O(b - a))
                let shift = j as i64 - (b.shift - a.shift);
                *out.entry(shift).or_default() += h * &mult;
            }
        }
    }
    Ok(out)
}

/// `δ′_t(M, N) = Σ_m dim Hom(M, N[m]) e^{-mt}` on `P^d`.
pub fn delta_prime(d: usize, m: &KClassSum, n: &KClassSum, t: f64) -> Result<f64, RrError> {
    Ok(hom_dimensions(d, m, n)?
        .iter()
        .map(|(&shift, dim)| dim.to_f64().unwrap_or(f64::INFINITY) * (-(shift as f64) * t).exp())
        .sum())
}

/// `log δ′_t(M, N)`, stable for dimensions beyond `f64` range; `-∞` when δ′ vanishes.
pub fn ln_delta_prime(d: usize, m: &KClassSum, n: &KClassSum, t: f64) -> Result<f64, RrError> {
    let logs: Vec<f64> = hom_dimensions(d, m, n)?
        .iter()
        .map(|(&shift, dim)| ln_abs_bigint(&BigInt::from(dim.clone())) - shift as f64 * t)
        .collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Ok(max);
    }
    Ok(max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln())
}
