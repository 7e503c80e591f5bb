use super::sequence::{chi_sequence, extract_limit, EntropySequence, LimitEstimate};
use super::verdict::{spectral_tolerance, Tolerances, Verdict};
use super::EntropyError;
use crate::endo_actions::{DegreeReport, EndoAction};
use crate::exact_linalg::SpectralInterval;
use crate::rr_engine::endo_k_action;

/// Entropy of `Lf^*` next to `log ρ([Lf^*])`, `log max_q r_q` and `log max_q d_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub sequence: EntropySequence,
    pub h: LimitEstimate,
    pub rho: SpectralInterval,
    pub degrees: DegreeReport,
    pub verdicts: Vec<Verdict>,
}

impl EntropyReport {
    pub fn log_rho(&self) -> (f64, f64) {
        self.rho.ln_bounds()
    }

    pub fn log_max_rq(&self) -> (f64, f64) {
        self.degrees.max_radius().ln_bounds()
    }

    pub fn log_max_dq(&self) -> f64 {
        self.degrees.log_max_seq()
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

pub fn verify_theorem1(action: &EndoAction, tolerances: Tolerances, n_max: u32) -> Result<EntropyReport, EntropyError> {
    action.validate()?;
    let spectral_tol = spectral_tolerance(tolerances.tol);
    let sequence = chi_sequence(action, n_max)?;
    let h = extract_limit(&sequence)?;
    let rho = endo_k_action(action).spectral_radius(&spectral_tol)?;
    let degrees = action.degree_report(&spectral_tol, n_max)?;
    let log_rho = rho.ln_midpoint();
    let log_rq = degrees.max_radius().ln_midpoint();
    let log_dq = degrees.log_max_seq();
    let verdicts = vec![
        Verdict::equality("h_cat = log rho([Lf*])", h.h, log_rho, tolerances.h_tol),
        Verdict::equality("log rho([Lf*]) = log max_q r_q", log_rho, log_rq, tolerances.tol),
        Verdict::equality("log max_q r_q = log max_q d_q", log_rq, log_dq, tolerances.tol),
        Verdict::with_difference("h_cat >= 0", h.h, 0.0, (-h.h).max(0.0), tolerances.tol),
    ];
    Ok(EntropyReport {
        sequence,
        h,
        rho,
        degrees,
        verdicts,
    })
}
