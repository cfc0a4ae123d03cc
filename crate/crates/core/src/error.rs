use thiserror::Error;

/// Errors raised by the tiling library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial has a zero constant term and divides no X^N - 1")]
    ZeroConstantTerm,

    #[error("invalid rhythmic pattern: {0}")]
    InvalidPattern(String),

    #[error("period N must be positive")]
    ZeroPeriod,

    #[error("word length {length} is shorter than the required {required}")]
    WordTooShort { length: usize, required: usize },

    #[error("concatenation is not a direct sum: {0} is reached twice")]
    ConcatenationCollision(usize),

    #[error("onsets {first} and {second} coincide modulo {n}")]
    ResidueCollision { first: usize, second: usize, n: usize },

    #[error("not a tiling of Z_{n} {modulus}")]
    NotATiling { n: usize, modulus: String },

    #[error("under-cover bounds invalid: {0}")]
    UnderCoverBounds(String),

    #[error("fill is stuck at index {0}")]
    FillStuck(usize),

    #[error("order k = {0} is outside the supported range 1..=12")]
    OrderOutOfRange(u32),

    #[error("census limited to N <= 40, got {0}")]
    CensusTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
