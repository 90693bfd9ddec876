use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("resource budget exceeded: {0}")]
    ResourceExhausted(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("curves share a component through the point")]
    CommonComponent,
    #[error("out of guaranteed scope: {0}")]
    OutOfScope(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
