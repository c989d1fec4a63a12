use thiserror::Error;

/// Errors for covariance-matrix construction and Gaussian-state operations.
///
/// Numeric payloads are stored as `f64` regardless of the working scalar so
/// the error type stays object-safe and cheap to match on.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("covariance matrix is not symmetric (worst relative asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("covariance matrix is not positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    #[error("unphysical state: symplectic eigenvalue {0:.9} lies below the vacuum bound 1/2")]
    BelowVacuumBound(f64),

    #[error("expected {expected} mode(s), got {got}")]
    ModeCount { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate state: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
