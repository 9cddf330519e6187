use thiserror::Error;

use crate::spec_io::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Dimension, variable-count or truncation-order mismatch.
    #[error("shape error: {0}")]
    Shape(String),
    /// A coefficient beyond the truncation order was requested.
    #[error("coefficient of degree {degree} requested from a series truncated at order {order}")]
    OutOfTruncation { degree: usize, order: usize },
    #[error("substitution error: {0}")]
    Substitution(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("order {order} is too low, need at least {needed}")]
    InsufficientOrder { order: usize, needed: usize },
    /// Rejected user data; `code` is a stable identifier also used in reports.
    #[error("[{code}] {message}")]
    Input { code: &'static str, message: String },
    #[error("{0}")]
    Parse(Diagnostic),
    /// An invariant the mathematics guarantees did not hold. Always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl From<Diagnostic> for Error {
    fn from(d: Diagnostic) -> Self {
        Error::Parse(d)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
