use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the algebra and coding layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("operands belong to different quotient rings")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("undefined for this input: {0}")]
    UndefinedInput(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension modulus is not a monic irreducible polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("modulus must be monic of degree at least 1")]
    BadModulus,
    #[error("polynomial does not divide the modulus")]
    NotADivisor,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("rows do not form a basis of divisors: {0}")]
    NotDivisorBasis(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search space of {needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// A syntax error in polynomial or code-file text, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
