use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An internal consistency check failed. Seeing one of these means a bug.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("numeric integrity: {0}")]
    NumericIntegrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn structural<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structural(msg.into()))
}
