//! Exact rational linear algebra: matrices, characteristic polynomials,
//! certified spectral radii and Jordan growth orders.

mod charpoly;
mod growth;
mod matrix;
mod radius;
pub mod rational;

use thiserror::Error;

pub use charpoly::{char_poly, CharPoly};
pub use growth::{growth_order, GrowthOrder, DEFAULT_GROWTH_N_MAX, MULTIPLICITY_SLACK};
pub use matrix::{mat_mul, mat_pow, RationalMatrix};
pub use radius::{root_radius, roots_inside_radius, spectral_radius, IntervalRecord, SpectralInterval};
pub use rational::BigRational;

/// Default width of certified spectral intervals, `10^-9`.
pub fn default_tolerance() -> BigRational {
    rational::ten_pow_neg(9)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have positive dimensions")]
    EmptyMatrix,
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    EntryCount { rows: usize, cols: usize, len: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is not monic of positive degree")]
    NotMonic,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("interval bounds must satisfy 0 <= lower <= upper")]
    InvalidInterval,
    #[error("nilpotent matrix: spectral radius 0, growth is degenerate")]
    DegenerateGrowth,
    #[error("ambiguous growth: fitted log-n slope {slope:.4} is not near an admissible integer")]
    AmbiguousGrowth { slope: f64 },
    #[error("growth window needs n_max >= 8, got {n_max}")]
    WindowTooShort { n_max: u32 },
}
