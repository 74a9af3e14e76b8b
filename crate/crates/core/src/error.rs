//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by constructions, validators and parsers.
///
/// `Precondition` means the caller handed in something the operation does
/// not accept; `Structural` means an internal consistency claim failed and
/// signals either corrupt input or an implementation bug. Parsers report
/// the 1-based line of the offending record.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid move at step {step}: {message}")]
    InvalidMove { step: usize, message: String },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
