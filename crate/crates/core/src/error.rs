use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not additive: nonzero coefficient at exponent {exponent}")]
    NotAdditive { exponent: usize },
    #[error("additive polynomial is not central: {0}")]
    NotCentral(String),
    #[error("additive polynomial is not squarefree (zero linear coefficient)")]
    NotSquarefree,
    #[error("expected skew degree {expected}, found {found}")]
    WrongSkewDegree { expected: usize, found: i64 },
    #[error("inexact division in closed-form count: {0}")]
    InexactDivision(String),
    #[error("no polynomial with {0}")]
    EmptyClass(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("enumeration of {requested} items exceeds the limit of {limit}")]
    GuardExceeded { requested: u128, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
