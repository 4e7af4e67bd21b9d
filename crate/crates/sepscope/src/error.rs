//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building states or evaluating criteria.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operation that needs a square matrix received a rectangular one.
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    /// Input deviates from Hermitian beyond the accepted tolerance.
    #[error("matrix deviates from Hermitian by {deviation:.3e} (tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// The iterative eigensolver hit its sweep cap before converging.
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// Incompatible matrix or subsystem dimensions.
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// A vector or coefficient matrix that must be unit-norm is not.
    #[error("not normalized: norm {norm} differs from 1 beyond {tolerance:.1e}")]
    NotNormalized { norm: f64, tolerance: f64 },

    /// A state required to satisfy the flip symmetry does not.
    #[error("state is not symmetric: deviation {deviation:.3e}")]
    NotSymmetric { deviation: f64 },

    /// A family parameter lies outside its documented domain.
    #[error("parameter {name} = {value} outside valid range {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Mixture weights are negative or do not sum to one.
    #[error("mixture weights invalid: {reason}")]
    WeightsInvalid { reason: String },

    /// Truncation dimension below the family's minimal support.
    #[error("truncation dimension {dim} too small, need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    /// A tensor-sum realignment needs at least one term.
    #[error("tensor-sum term list is empty")]
    EmptyTermList,

    /// A tail state overlaps the block it must avoid.
    #[error("tail state overlaps the primary block: overlap norm {norm:.3e}")]
    SupportOverlap { norm: f64 },

    /// Stability analysis needs at least two truncation dimensions per point.
    #[error("stability report needs at least two truncation dimensions per grid point")]
    InsufficientDims,

    /// Text input could not be tokenized or decoded.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Input parsed but violates a named invariant.
    #[error("validation failed ({invariant}): {detail}")]
    Validation {
        invariant: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
