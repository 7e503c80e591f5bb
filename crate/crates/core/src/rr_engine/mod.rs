//! Riemann–Roch on numerical rings: Chern characters, Euler forms, induced
//! actions on `N(X)_ℚ`, and Hom dimensions on projective space.

mod action;
mod bott;
mod kclass;

use thiserror::Error;

use crate::endo_actions::ActionError;
use crate::exact_linalg::LinalgError;
use crate::variety_models::ModelError;

pub use action::{autoeq_action, endo_k_action, twist_action, NumericalAction};
pub use bott::{bott_h_dim, delta_prime, hom_dimensions, ln_delta_prime};
pub use kclass::{chern_character, euler_form, euler_pairing, KClassSum, KTerm, KTermConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RrError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("expected a divisor class concentrated in codimension 1")]
    NotDivisor,
    #[error("multiplicities must be >= 1")]
    ZeroMultiplicity,
    #[error("autoequivalences need an automorphism, got degree {degree}")]
    DegreeNotOne { degree: String },
    #[error("cohomological degree {m} out of range for P^{d}")]
    CohomologyDegree { m: usize, d: usize },
    #[error("Hom dimensions are only available on projective space")]
    NotProjectiveSpace,
    #[error("line bundle O({0}) on projective space needs an integer degree")]
    NonIntegralDegree(String),
}
