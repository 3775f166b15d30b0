use thiserror::Error;

/// Errors surfaced by set construction, algebra operations, and model checks.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two functions were combined pointwise but live on different sets.
    #[error("set mismatch: {0}")]
    SetMismatch(String),

    #[error("unsupported rule: {0}")]
    UnsupportedRule(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
