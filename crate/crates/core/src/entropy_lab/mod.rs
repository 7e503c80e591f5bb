//! Categorical entropy sequences, limit extraction and the equality checks
//! between entropy, spectral radii and dynamical degrees.

mod autoeq;
mod ht;
mod sequence;
mod theorem1;
mod verdict;

use thiserror::Error;

use crate::endo_actions::ActionError;
use crate::exact_linalg::LinalgError;
use crate::rr_engine::RrError;
use crate::variety_models::ModelError;

pub use autoeq::{anti_ample_twist, standard_autoeq_entropy, AutoeqReport};
pub use ht::{entropy_function_t, functor_sequence, Functor, HtPoint};
pub use sequence::{chi_sequence, chi_term, extract_limit, EntropySequence, LimitEstimate, DEFAULT_N_MAX};
pub use theorem1::{verify_theorem1, EntropyReport};
pub use verdict::{spectral_tolerance, Tolerances, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error("χ_{n} = 0: the Euler characteristic vanishes, so log|χ_n| is undefined")]
    ZeroChi { n: u32 },
    #[error("δ′ vanishes at n = {n}")]
    ZeroDelta { n: u32 },
    #[error("limit extraction needs at least 8 terms, got {len}")]
    TooFewTerms { len: usize },
    #[error("model {0} is neither canonically nor anticanonically ample")]
    NotCanonicallyAmple(String),
    #[error("no l with |l| <= {bound} makes L′ + l·K_X anti-ample")]
    NoAntiAmpleTwist { bound: i64 },
    #[error("unsupported functor: {0}")]
    UnsupportedFunctor(String),
}

#[cfg(test)]
mod tests;
