//! Error type shared by every operation of the core crate.

use alloc::string::String;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A formula exceeded the configured size guardrail.
    #[error("formula size {size} exceeds the limit {limit}")]
    Blowup { size: usize, limit: usize },
    /// The time guardrail was reached.
    #[error("time limit of {limit_ms} ms exceeded")]
    Timeout { limit_ms: u64 },
    /// A polynomial degree exceeded the configured cap.
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    /// A term was required to be polynomial in a variable but is not.
    #[error("term is not polynomial in {var}: {term}")]
    NotPolynomial { var: String, term: String },
    /// A variable had no value during evaluation.
    #[error("unbound variable {0}")]
    Unbound(String),
    /// An operation was called outside its precondition.
    #[error("precondition violated: {0}")]
    Contract(String),
    /// An internal postcondition or termination measure failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
