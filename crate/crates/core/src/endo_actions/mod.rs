//! Surjective endomorphisms acting on numerical rings, and their dynamical degrees.

mod action;
mod config;
mod degrees;
mod helpers;

use thiserror::Error;

use crate::exact_linalg::LinalgError;
use crate::variety_models::ModelError;

pub use action::{EndoAction, Violation};
pub use config::ActionConfig;
pub use degrees::{DegreeEntry, DegreeReport, DynamicalDegree, SequenceEstimate, SEQ_RESIDUAL_LIMIT};
pub use helpers::{
    abelian_matrix, coordinate_permutation, explicit, exterior_square, exterior_square_h1,
    from_divisor_action, power_map, product_power_map, WEDGE_PAIRS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid action: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("codimension {codim} out of range for dimension {dim}")]
    CodimOutOfRange { codim: usize, dim: usize },
    #[error("actions live on different models")]
    ModelMismatch,
    #[error("unsupported action: {0}")]
    Unsupported(String),
    #[error("codimension {codim} is not spanned by products of divisors")]
    NotDivisorGenerated { codim: usize },
    #[error("intersection number for codim {codim} at n = {n} is not positive")]
    NonPositiveIntersection { codim: usize, n: u32 },
    #[error("sequence route needs n_max >= 8, got {n_max}")]
    WindowTooShort { n_max: u32 },
    #[error("action config: {0}")]
    Config(String),
}
