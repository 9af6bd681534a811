use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different coefficient domains ({left} vs {right})")]
    DomainMismatch { left: String, right: String },

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("operation requires {required}, got {actual}")]
    UnsupportedDomain { required: &'static str, actual: String },

    #[error("index {index} out of range for a sequence of length {len}")]
    Index { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("value {value} is out of range for F_{p}")]
    Range { value: String, p: u32 },

    #[error("resource guard tripped: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
