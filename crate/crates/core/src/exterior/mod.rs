//! Sparse exterior algebra over Euclidean `ℝⁿ` (`n ≤ 10`).
//!
//! Forms are homogeneous and keyed by basis blades with exact permutation
//! signs. Blades are orthonormal; the Hodge star uses the orientation
//! `e_1 ∧ … ∧ e_n`. A 2-form `β` and its skew endomorphism `A` are related by
//! `⟨A e_i, e_j⟩ = β(e_i, e_j)`, so that `tr(A²) = -2|β|²`.

mod blade;
mod endo;
mod form;

pub use blade::Blade;
pub use endo::{SkewEndo, Vector};
pub use form::ExteriorForm;

use thiserror::Error;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 10;

/// Coefficients below this magnitude are dropped after arithmetic.
pub const ZERO_THRESHOLD: f64 = 1e-13;

/// Entrywise tolerance on `M + Mᵀ` when accepting a matrix as skew.
pub const SKEW_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExteriorError {
    #[error("dimension {dim} outside supported range 1..={MAX_DIM}")]
    DimensionOutOfRange { dim: usize },
    #[error("degree {degree} exceeds ambient dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("interior product of a scalar")]
    DegreeUnderflow,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid blade indices {indices:?}: {reason}")]
    InvalidIndices {
        indices: Vec<usize>,
        reason: &'static str,
    },
    #[error("blade {indices:?} listed more than once")]
    DuplicateBlade { indices: Vec<usize> },
    #[error("non-finite coefficient")]
    NonFiniteCoefficient,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric (max |M + Mᵀ| = {deviation:e})")]
    NotSkew { deviation: f64 },
}
