use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    /// A bounded search (resolution length, period, closure budget) ran out.
    #[error("truncated without a conclusion: {0}")]
    Truncated(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
