use thiserror::Error;

/// Errors raised by the arithmetic, series and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NotPositive(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} has a cofactor {cofactor} that cannot be resolved with primes below {bound}")]
    BeyondFactorBound {
        value: String,
        cofactor: String,
        bound: u64,
    },
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has a zero constant term")]
    ZeroConstantTerm,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u64),
    #[error("index {index} is outside the computed range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("index must be even, got {0}")]
    OddIndex(usize),
    #[error("({n}, {a}) is outside the hypotheses: {reason}")]
    Hypothesis { n: usize, a: u64, reason: &'static str },
    #[error("value {value} at index {index} is not an integer")]
    NonIntegral { index: usize, value: String },
    #[error("grid is empty after applying the hypotheses of {0}")]
    EmptyGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
