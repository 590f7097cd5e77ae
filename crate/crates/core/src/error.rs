use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group order {m} is not a power of {p}")]
    NotPrimePower { m: usize, p: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("trivial case: the unit group of ZC_{order} is ±C_{order}")]
    TrivialCase { order: u64 },
    #[error("case p={p}, n={n} is out of scope: {reason}")]
    OutOfScope { p: u64, n: u32, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown unit set name `{0}`")]
    UnknownSet(String),
    #[error("input equals the identity")]
    IdentityInput,
    #[error("torsion element passed to the log-rank test")]
    TorsionInput,
    #[error("ambient group of order {p}^{exponent} is too large for enumeration")]
    Capacity { p: u64, exponent: usize },
    #[error("precision disagreement: rank {low} at {low_bits} bits, {high} at {high_bits} bits")]
    Precision {
        low: usize,
        low_bits: usize,
        high: usize,
        high_bits: usize,
    },
    #[error("structural error: {0}")]
    Structural(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
