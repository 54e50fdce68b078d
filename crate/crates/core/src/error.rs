use thiserror::Error;

/// Errors raised by the matrix routines and the structured-family evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max |H - H*| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("independent evaluations disagree: {0}")]
    Inconsistent(String),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
