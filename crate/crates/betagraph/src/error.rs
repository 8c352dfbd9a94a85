//! Crate-wide error type.

use crate::solver::FitStatus;

/// Errors produced by graph construction, parsing, fitting, and inference.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("vertex id {id} out of range 1..={t}")]
    VertexOutOfRange { id: usize, t: usize },

    #[error("self-loop at vertex {id} is not allowed")]
    SelfLoop { id: usize },

    #[error("need at least {min} vertices, got {t}")]
    TooFewVertices { t: usize, min: usize },

    #[error("degree {degree} at vertex {id} exceeds t-1 = {max}")]
    DegreeOutOfRange { id: usize, degree: usize, max: usize },

    #[error("degree sum {sum} is odd; degrees of a graph sum to twice the edge count")]
    OddDegreeSum { sum: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("regular degree {k} must lie strictly between 0 and t-1 = {max}")]
    RegularDegreeInfeasible { k: usize, max: usize },

    #[error("fit is not converged (status {0:?})")]
    NotConverged(FitStatus),

    #[error("confidence level {0} must lie strictly between 0 and 1")]
    InvalidLevel(f64),

    #[error("matrix is numerically not positive definite")]
    NotPositiveDefinite,

    #[error("inverse residual {residual:.3e} exceeds {limit:.0e}; matrix too ill-conditioned")]
    InverseResidual { residual: f64, limit: f64 },

    #[error("dense inversion is capped at t <= {max}, got t = {t}")]
    DimensionCap { t: usize, max: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot export an empty report set")]
    EmptyReportSet,

    #[error("inconsistent report set: {0}")]
    MixedReportSet(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
