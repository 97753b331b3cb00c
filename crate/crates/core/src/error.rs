use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("zero raised to negative power {0}")]
    ZeroToNegativePower(i64),

    #[error("quadratic extension elements have different discriminants")]
    DiscriminantMismatch,

    #[error("discriminant must be nonzero")]
    ZeroDiscriminant,

    #[error("degenerate characteristic polynomial: p^2 - 4q = 0")]
    DegenerateDiscriminant,

    #[error("invalid sequence parameters: {0}")]
    InvalidParams(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("naive enumeration would evaluate {estimate} summands, cap is {cap}")]
    CapExceeded { estimate: String, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid nested sum: {0}")]
    InvalidSpec(String),

    #[error("internal invariant broken: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
