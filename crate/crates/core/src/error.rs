use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument: bad order, non-positive step, mismatched dimensions.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An input operator failed one of the standing hypotheses.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A dense factorization produced a result outside its residual bound.
    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dim_mismatch(expected: usize, got: usize) -> Self {
        Error::Parameter(format!("dimension mismatch: expected {expected}, got {got}"))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
