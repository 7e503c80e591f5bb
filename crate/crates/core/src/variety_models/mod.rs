//! Numerical intersection rings of model varieties.

mod builtin;
mod config;
mod graded;
mod model;

use thiserror::Error;

use crate::exact_linalg::BigRational;

pub use builtin::{abelian_surface, builtin, p1_power, product, projective_space, todd_series};
pub use config::{load_model, CupEntry, ModelConfig};
pub use graded::GradedClass;
pub use model::{AmpleCone, CupTable, ModelKind, ModelParts, VarietyModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("unknown built-in model {0:?}")]
    UnknownBuiltin(String),
    #[error("malformed model: {0}")]
    Shape(String),
    #[error("{what}: expected {expected} coordinates, found {found}")]
    RankMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("missing cup table for codimensions ({q1},{q2})")]
    MissingCupTable { q1: usize, q2: usize },
    #[error("cup product is not commutative on basis pair {left:?}, {right:?} (codim, index)")]
    NonCommutative {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("cup product is not associative on basis triple {triple:?} (codim, index)")]
    NonAssociative { triple: [(usize, usize); 3] },
    #[error("Todd class must start with td_0 = 1")]
    ToddNormalization,
    #[error("intersection pairing between codim {codim} and its complement is degenerate")]
    DegeneratePairing { codim: usize },
    #[error("c1(L) is not ample: integral of c1(L)^d is {volume}")]
    NotAmple { volume: BigRational },
    #[error("codimension {codim} out of range for dimension {dim}")]
    CodimOutOfRange { codim: usize, dim: usize },
    #[error("expected a class concentrated in codimension 1")]
    NotDivisor,
}
