use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-side problem
/// (bad input, range cap, unsupported field); nothing here is transient.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invariant factors {given:?} do not form a divisibility chain of integers >= 2; {hint}")]
    NotDivisibilityChain { given: Vec<u64>, hint: String },

    #[error("group of order {order} exceeds the enumeration cap of {cap}")]
    GroupTooLarge { order: u64, cap: u64 },

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("expected {what} of length {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{0} is not a squarefree negative integer")]
    InvalidField(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("class number {h} > 2 is not supported by {operation}")]
    UnsupportedClassNumber { h: u64, operation: &'static str },

    #[error("no Hilbert class field residue data available for d = {0}")]
    MissingHilbertData(i64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(what: &'static str, value: impl ToString, range: &'static str) -> Error {
    Error::OutOfRange {
        what,
        value: value.to_string(),
        range,
    }
}
