use sdlab_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// 0 pass, 1 verification failure, 2 parse, 3 dimension, 4 hypothesis,
    /// 5 I/O. Numerical breakdowns report as failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Verification(_) | Self::Numerical(_) => 1,
            Self::Parse(_) => 2,
            Self::Dimension(_) => 3,
            Self::Hypothesis(_) => 4,
            Self::Io(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotSquare { .. } | Error::Dimension(_) => Self::Dimension(msg),
            Error::NonFinite => Self::Parse(msg),
            Error::Hypothesis(_) | Error::Singular(_) => Self::Hypothesis(msg),
            Error::NotHermitian { .. } | Error::NoConvergence(_) | Error::Inconsistent(_) => {
                Self::Numerical(msg)
            }
        }
    }
}
