use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("inverse of zero in Q(mu_{0})")]
    ZeroInverse(u32),

    #[error("invalid modulus {0}")]
    InvalidModulus(u32),

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u32),

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(String),

    #[error("series diverges at unit argument: convergence margin {0} <= 0")]
    Divergent(String),

    #[error("denominator parameter {0} is a non-positive integer")]
    PoleParameter(String),

    #[error("series did not reach the requested precision within {0} terms")]
    NonConvergence(u64),

    #[error("precision escalation exhausted at {0} bits")]
    PrecisionExhausted(u32),

    #[error("quadrature: {0}")]
    Quadrature(String),

    #[error("({a}, {b}) is not in the index set for N = {n}")]
    NotInIndexSet { a: i64, b: i64, n: u32 },

    #[error("zero residue has no angle representative")]
    ZeroResidue,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("k = {k} out of range 1..={max} for N = {n}")]
    KOutOfRange { k: u32, n: u32, max: u32 },

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
