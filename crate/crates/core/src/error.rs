use thiserror::Error;

/// Failure classes shared by every module. The CLI maps each class to an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes do not line up: wrong dimension, elements from different groups.
    #[error("structural error: {0}")]
    Structural(String),
    /// Input is well-formed but violates a precondition.
    #[error("validation error: {0}")]
    Validation(String),
    /// A configured size or enumeration cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An internal invariant failed. Seeing this is a bug.
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Structural(_) | Error::Validation(_) => 1,
            Error::Resource(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn resource(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}
