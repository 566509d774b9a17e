use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated (unknown vertex, digit out
    /// of range, bad partition, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured budget or size cap was exceeded. For searches this means
    /// "inconclusive", never "refuted".
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A textual name (vertex, edge, address) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
