use num_bigint::BigInt;

use super::sequence::{extract_limit, EntropySequence, LimitEstimate};
use super::EntropyError;
use crate::exact_linalg::BigRational;
use crate::rr_engine::{ln_delta_prime, KClassSum};

/// `F(-) = Lf_k^*(- ⊗ O(c))[m]` on `P^d`, with `f_k` the `k`-th power map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Functor {
    pub pullback: u64,
    pub twist: i64,
    pub shift: i64,
}

impl Functor {
    pub fn shift(m: i64) -> Self {
        Self {
            pullback: 1,
            twist: 0,
            shift: m,
        }
    }

    pub fn twist(c: i64) -> Self {
        Self {
            pullback: 1,
            twist: c,
            shift: 0,
        }
    }

    pub fn pullback(k: u64) -> Self {
        Self {
            pullback: k,
            twist: 0,
            shift: 0,
        }
    }

    pub fn describe(&self) -> String {
        format!("Lf_{}^*(- ⊗ O({}))[{}]", self.pullback, self.twist, self.shift)
    }

    /// `F^n(O(a)[s]) = O(k^n a + c(k + … + k^n))[s + nm]`.
    fn iterate(&self, g: &KClassSum, n: u32) -> KClassSum {
        let k = BigInt::from(self.pullback);
        let kn = num_traits::pow(k.clone(), n as usize);
        let mut twist = BigInt::from(0);
        let mut power = BigInt::from(1);
        for _ in 0..n {
            power *= &k;
            twist += &power;
        }
        twist *= self.twist;
        let scale = BigRational::from_integer(kn);
        let offset = BigRational::from_integer(twist);
        g.map_terms(|t| crate::rr_engine::KTerm {
            divisor: t.divisor.iter().map(|x| x * &scale + &offset).collect(),
            shift: t.shift + i64::from(n) * self.shift,
            multiplicity: t.multiplicity,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HtPoint {
    pub t: f64,
    pub h: LimitEstimate,
}

/// `a_n = log δ′_t(G, F^n G*)` on `P^d`.
pub fn functor_sequence(d: usize, functor: Functor, t: f64, n_max: u32) -> Result<EntropySequence, EntropyError> {
    if d == 0 {
        return Err(EntropyError::UnsupportedFunctor("P^0 has no entropy to measure".into()));
    }
    if functor.pullback == 0 {
        return Err(EntropyError::UnsupportedFunctor("pullback by a power map needs k >= 1".into()));
    }
    let one = [BigRational::from_integer(1.into())];
    let top = d as i64 + 1;
    let g = KClassSum::twists_of(&one, 1..=top);
    let g_dual = KClassSum::twists_of(&one, (1..=top).map(|i| -i));
    let mut terms = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let value = ln_delta_prime(d, &g, &functor.iterate(&g_dual, n), t)?;
        if value == f64::NEG_INFINITY {
            return Err(EntropyError::ZeroDelta { n });
        }
        terms.push((n, value));
    }
    Ok(EntropySequence {
        descriptor: format!("log delta'_{t}(G, F^n G*) on P{d}, F = {}", functor.describe()),
        terms,
        exact: Vec::new(),
    })
}

/// `h_t(F)` on each grid point.
pub fn entropy_function_t(d: usize, functor: Functor, t_grid: &[f64], n_max: u32) -> Result<Vec<HtPoint>, EntropyError> {
    t_grid
        .iter()
        .map(|&t| {
            let seq = functor_sequence(d, functor, t, n_max)?;
            Ok(HtPoint {
                t,
                h: extract_limit(&seq)?,
            })
        })
        .collect()
}
