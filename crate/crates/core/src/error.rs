use thiserror::Error;

/// Errors produced by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An f-vector entry came out fractional, so the input h cannot belong to a
    /// cubical polytope.
    #[error("non-integral result at index {index}: {value}")]
    NonIntegral { index: usize, value: String },
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
