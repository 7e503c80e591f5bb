use num_traits::{One, Signed, Zero};

use super::sequence::{extract_limit, generators, EntropySequence, LimitEstimate};
use super::verdict::{spectral_tolerance, Tolerances, Verdict};
use super::EntropyError;
use crate::endo_actions::EndoAction;
use crate::exact_linalg::rational::{format_rational, ln_abs, to_f64};
use crate::exact_linalg::{BigRational, SpectralInterval};
use crate::rr_engine::{autoeq_action, euler_pairing, KClassSum, RrError};
use crate::variety_models::VarietyModel;

/// Search bound for the integer `l` in `L″ = L′ + l·K_X`.
pub const TWIST_SEARCH_BOUND: i64 = 1000;

/// Entropy of `F = Lf^*(- ⊗ L′)[a]`, computed through `F′ = Lf^*(- ⊗ L″)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutoeqReport {
    pub l: i64,
    pub anti_ample_twist: Vec<BigRational>,
    pub sequence: EntropySequence,
    pub h: LimitEstimate,
    pub rho: SpectralInterval,
    pub verdicts: Vec<Verdict>,
}

impl AutoeqReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

fn is_anti_ample(model: &VarietyModel, divisor: &[BigRational]) -> Result<bool, EntropyError> {
    let neg: Vec<BigRational> = divisor.iter().map(|x| -x).collect();
    let class = model.divisor(&neg)?;
    let rest = model.power_class(model.c1l(), model.dim() - 1)?;
    let degree = model.integrate(&model.cup(&class, &rest)?)?;
    Ok(degree.is_positive() && model.is_ample(&class)?)
}

/// Integer `l` of smallest absolute value with `L′ + l·K_X` anti-ample, and that divisor.
pub fn anti_ample_twist(model: &VarietyModel, l_prime: &[BigRational]) -> Result<(i64, Vec<BigRational>), EntropyError> {
    let k = model.canonical().part(1);
    for step in 0..=TWIST_SEARCH_BOUND {
        for l in if step == 0 { vec![0] } else { vec![step, -step] } {
            let scale = BigRational::from_integer(l.into());
            let candidate: Vec<BigRational> = l_prime.iter().zip(k).map(|(a, b)| a + b * &scale).collect();
            if is_anti_ample(model, &candidate)? {
                return Ok((l, candidate));
            }
        }
    }
    Err(EntropyError::NoAntiAmpleTwist {
        bound: TWIST_SEARCH_BOUND,
    })
}

pub fn standard_autoeq_entropy(
    f: &EndoAction,
    l_prime: &[BigRational],
    shift: i64,
    tolerances: Tolerances,
    n_max: u32,
) -> Result<AutoeqReport, EntropyError> {
    let model = f.model().clone();
    if !model.canonical_ample() && !model.anticanonical_ample() {
        return Err(EntropyError::NotCanonicallyAmple(model.name().to_string()));
    }
    f.validate()?;
    if !f.degree().is_one() {
        return Err(RrError::DegreeNotOne {
            degree: f.degree().to_string(),
        }
        .into());
    }
    let l_prime_class = model.divisor(l_prime)?;
    let (l, twist) = anti_ample_twist(&model, l_prime)?;

    // F′^n(O(D)) = O((f^*)^n D + Σ_{j=1}^n (f^*)^j L″)
    let pullback = f.pullback(1)?;
    let (g, _) = generators(&model);
    let ch_g = g.chern_class(&model)?;
    let top = model.dim() as i64 + 1;
    let mut polarization = model.c1l().part(1).to_vec();
    let mut accumulated = vec![BigRational::zero(); polarization.len()];
    let mut terms = Vec::with_capacity(n_max as usize);
    let mut exact = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        polarization = pullback.mul_vec(&polarization)?;
        let shifted: Vec<BigRational> = accumulated.iter().zip(&twist).map(|(a, b)| a + b).collect();
        accumulated = pullback.mul_vec(&shifted)?;
        let g_n = KClassSum::twists_of(&polarization, (1..=top).map(|i| -i)).twisted(&accumulated);
        let chi = euler_pairing(&model, &ch_g, &g_n.chern_class(&model)?)?;
        if chi.is_zero() {
            return Err(EntropyError::ZeroChi { n });
        }
        terms.push((n, ln_abs(&chi)));
        exact.push(chi);
    }
    let sequence = EntropySequence {
        descriptor: format!(
            "chi(G, F'^n G*) on {}, L'' = ({})",
            model.name(),
            twist.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        ),
        terms,
        exact,
    };
    let h = extract_limit(&sequence)?;
    let rho = autoeq_action(f, &l_prime_class, shift)?.spectral_radius(&spectral_tolerance(tolerances.tol))?;
    let one = BigRational::one();
    let lower = to_f64(rho.lower());
    let upper = to_f64(rho.upper());
    let outside = if rho.contains(&one) {
        0.0
    } else {
        (lower - 1.0).abs().min((upper - 1.0).abs())
    };
    let verdicts = vec![
        Verdict::equality("h(F) = 0", h.h, 0.0, tolerances.h_tol),
        Verdict::equality("h(F) = log rho([F])", h.h, rho.ln_midpoint(), tolerances.h_tol),
        Verdict::with_difference("rho([F]) contains 1", lower, upper, outside, 0.0),
        Verdict::with_difference("rho([F]) upper - 1 <= tol", upper, 1.0, (upper - 1.0).max(0.0), tolerances.tol),
    ];
    Ok(AutoeqReport {
        l,
        anti_ample_twist: twist,
        sequence,
        h,
        rho,
        verdicts,
    })
}
