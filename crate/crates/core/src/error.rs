use thiserror::Error;

/// Errors raised by the combinatorial and norm engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),

    /// A materialized prefix (or partition) is too short for the request.
    #[error("truncation: {what} needs {needed} elements but only {available} are materialized")]
    Truncation {
        what: String,
        needed: u64,
        available: u64,
    },

    #[error("oracle limit exceeded: input has {size} elements, bound is {bound}")]
    OracleLimit { size: usize, bound: usize },

    /// The exact engines refuse inputs whose expanded size would not finish.
    #[error("input too large for exact evaluation: {0}")]
    TooLarge(String),

    #[error("cannot select subsequence: {0}")]
    CannotSelect(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn truncation(what: impl Into<String>, needed: u64, available: u64) -> Self {
        Error::Truncation {
            what: what.into(),
            needed,
            available,
        }
    }

    /// Stable process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidInput(_) | Error::UnsupportedExponent(_) => 2,
            Error::Truncation { .. } => 3,
            Error::OracleLimit { .. } => 4,
            Error::TooLarge(_) => 5,
            Error::CannotSelect(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
