use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime, got {0}")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("exponent vector has length {found}, ring has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("Frobenius exponent e={e} exceeds the configured cap {cap}")]
    ExponentCap { e: u32, cap: u32 },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("colon or saturation by the zero ideal")]
    ZeroIdeal,
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("containment failure: {0}")]
    NotContained(String),
    #[error("quotient does not have finite colength")]
    InfiniteColength,
    #[error("quotient has possibly infinite length (nilpotency cap {0} exceeded)")]
    InfiniteLength(usize),
    #[error("saturation did not stabilize within {0} steps")]
    SaturationCap(usize),
    #[error("exact division failed: divisor does not divide")]
    InexactDivision,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
}

pub type Result<T> = std::result::Result<T, Error>;
