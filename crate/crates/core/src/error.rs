use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("operands live in different fields (conductors {0} and {1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit modulo {1}")]
    NotCoprime(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("operation requires a prime conductor, got {0}")]
    CompositeConductor(u64),
    #[error("zero has no ideal, valuation or factorization")]
    ZeroElement,
    #[error("{0} does not divide {1}")]
    NotDivisor(u64, u64),
    #[error("modulus {0} is congruent to 2 mod 4; use {1} instead")]
    NonCanonicalModulus(u64, u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("integer {0} could not be completely factored")]
    FactorizationIncomplete(String),
    #[error("p-th root search space too large ({0} residue combinations)")]
    RootSearchTooLarge(u128),
    #[error("principality undecided: {0}")]
    Undecided(String),
    #[error("factor base too small: {0}")]
    FactorBaseTooSmall(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
