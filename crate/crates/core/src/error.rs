use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input data violates a structural invariant (index out of range, bad shape, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A simplicial, categorical or algebraic identity fails.
    #[error("identity violated: {0}")]
    Identity(String),
    /// The operation needs data beyond the enumerated cutoff.
    #[error("truncated input: {0}")]
    Truncated(String),
    /// Arguments are incompatible with each other (degrees, rings, sizes).
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// A document is not JSON, cannot be read, or does not match its schema.
    #[error("{0}")]
    Schema(String),
    /// The operation is not defined for this kind of input.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Invalid(format!($($arg)*)) };
}
macro_rules! identity {
    ($($arg:tt)*) => { $crate::error::Error::Identity(format!($($arg)*)) };
}
pub(crate) use identity;
pub(crate) use invalid;
