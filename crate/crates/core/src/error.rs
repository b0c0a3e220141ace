use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KroneckerError {
    #[error("set contains zero")]
    ZeroElement,

    #[error("set contains a repeated element {0}")]
    DuplicateElement(i64),

    #[error("unsupported set size {0}; expected 2 or 3 elements")]
    UnsupportedSize(usize),

    #[error("absolute values are not distinct; lattice methods do not apply")]
    NonDistinct,

    #[error("rectangular lattice (r = 0) is outside the closed-form bounds")]
    RectangularUnsupported,

    #[error("gcd(0, 0) is undefined")]
    BothZero,

    #[error("{a} has no inverse modulo {n}")]
    NotInvertible { a: i64, n: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ordering violated: expected 0 < |n1| < n2 < n3, got ({0}, {1}, {2})")]
    Ordering(i64, i64, i64),

    #[error("solver budget of {0} boxes exhausted")]
    BudgetExhausted(usize),

    #[error("cannot parse rational from {0:?}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for KroneckerError {
    fn from(e: std::io::Error) -> Self {
        KroneckerError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, KroneckerError>;
