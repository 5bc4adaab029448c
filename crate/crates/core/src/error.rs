use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 1..=12")]
    InvalidDegree(u32),

    #[error("polynomial {poly:#b} is not primitive of degree {m}")]
    NotPrimitive { m: u32, poly: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("boolean function has empty support")]
    EmptySupport,

    #[error("enumeration budget exceeded: {kind} codes are capped at m <= {max_m}, got m = {m}")]
    BudgetExceeded { kind: String, m: u32, max_m: u32 },

    #[error("function is not quadratic: {0}")]
    NotQuadratic(String),

    #[error("verification failed at witness {witness}")]
    VerificationFailed { witness: String },

    #[error("code has no codewords")]
    EmptyCode,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}
