use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0} is reducible over F_{1}")]
    ReducibleModulus(String, u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("both arguments of xgcd are zero")]
    BothZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element of R is not a unit")]
    NonUnit,
    #[error("leading coefficient of divisor is not a unit in R")]
    NonUnitLeadingCoefficient,
    #[error("n = {n} is not coprime to p = {p}")]
    NotCoprime { n: usize, p: u32 },
    #[error("word has length {actual}, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("object too large: {0}")]
    TooLarge(String),
    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
