use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested level of a given color does not exist in the scheme.
    #[error("unavailable: {0}")]
    Unavailable(String),

    /// The input exceeds a configured resource bound.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A strategy was applied to a scheme that does not satisfy its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A scheme or position could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
