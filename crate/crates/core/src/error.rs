use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad tokens, out-of-range indices, invalid diagrams.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A well-formed request whose preconditions do not hold.
    #[error("precondition failed for {op}: {detail}")]
    Precondition { op: String, detail: String },
    /// The operation is defined but this instance is outside what the
    /// implementation handles.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn precondition(op: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precondition { op: op.into(), detail: detail.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
