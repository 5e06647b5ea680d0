use thiserror::Error;

/// Errors raised by the arithmetic, representation and group layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("p and l must be distinct primes (both are {0})")]
    EqualPrimes(u64),

    #[error("field of order {p}^{degree} is too large for exact table or word arithmetic")]
    FieldTooLarge { p: u64, degree: usize },

    #[error("modulus is not a monic irreducible polynomial of degree {degree} over F_{p}")]
    BadModulus { p: u64, degree: usize },

    #[error("zero divisor: component {component} of the element is zero")]
    ZeroDivisor { component: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid monodromy vector: {0}")]
    InvalidMonodromyVector(String),

    #[error("zero vector cannot be spun")]
    ZeroVector,

    #[error("singular matrix")]
    Singular,

    #[error("invariant form space has F_p-dimension {found}, expected {expected}")]
    FormDimension { found: usize, expected: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("operation requires the unitary (inert) case")]
    NotUnitary,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group engine: {0}")]
    Engine(String),
}

pub type Result<T> = std::result::Result<T, Error>;
