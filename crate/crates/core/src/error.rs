use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("inadmissible tuple: module m{index} would have negative degree {degree}")]
    NegativeDegree { index: usize, degree: i64 },

    #[error("tuple rejected by the admissibility check: {0}")]
    Inadmissible(String),

    #[error("alpha assignment violates the product skeleton at slot {slot}: {reason}")]
    Skeleton { slot: String, reason: String },

    #[error("structural inconsistency: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
