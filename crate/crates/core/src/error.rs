//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input violates a mathematical invariant (not well defined, not an isomorphism, ...).
    #[error("invalid: {0}")]
    Invalid(String),
    /// The input is outside the class the algorithm handles.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal consistency check failed; this indicates a bug rather than bad input.
    #[error("defect: {0}")]
    Defect(String),
    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Prefixes the message with where the failure happened.
    pub fn context(self, ctx: impl std::fmt::Display) -> Self {
        match self {
            Error::Invalid(m) => Error::Invalid(format!("{ctx}: {m}")),
            Error::Unsupported(m) => Error::Unsupported(format!("{ctx}: {m}")),
            Error::Defect(m) => Error::Defect(format!("{ctx}: {m}")),
            Error::Parse(m) => Error::Parse(format!("{ctx}: {m}")),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
