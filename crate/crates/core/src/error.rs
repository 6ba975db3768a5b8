use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field spec mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field spec: {0}")]
    InvalidField(String),
    #[error("cannot parse coefficient {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("malformed input: {0}")]
    Input(String),
    #[error("duplicate exponent {0}")]
    DuplicateExponent(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution exponent must be nonzero")]
    ZeroSubstitution,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("budget: expansion needs more than {budget} monomial products")]
    Budget { budget: u64 },
    #[error("zero series")]
    ZeroSeries,
    #[error("operation requires positive characteristic")]
    RequiresCharP,
    #[error("operation requires characteristic zero")]
    RequiresChar0,
    #[error("{0} is not a power of the characteristic")]
    NotPowerOfP(u64),
    #[error("special input: the bound only applies to non-special series")]
    SpecialInput,
    #[error("inconsistency: auxiliary series vanished for a non-special series")]
    Inconsistent,
    #[error("tower degree {0} exceeds the supported maximum of 24")]
    TowerTooLarge(u32),
    #[error("phi({n}) = {phi} exceeds the ceiling {ceiling}")]
    PhiCeiling { n: u64, phi: u64, ceiling: u64 },
    #[error("not invertible")]
    NotInvertible,
    #[error("no decomposition witness for N={n}, a1={a1}, a2={a2}")]
    NoWitness { n: u64, a1: i64, a2: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
