use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field order {p}^{n} exceeds the configured bound {bound}")]
    FieldTooLarge { p: u32, n: u32, bound: u32 },
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {index} does not belong to a field of order {q}")]
    ForeignElement { index: u32, q: u32 },
    #[error("operation requires a field of {expected} characteristic")]
    WrongParity { expected: &'static str },
    #[error("character index {index} out of range for a cyclic group of order {order}")]
    CharacterIndex { index: u32, order: u32 },
    #[error("group of order {order} exceeds the enumeration budget of {budget} elements")]
    BudgetExceeded { order: u64, budget: u64 },
    #[error("degenerate Bessel datum (a, b, c) = ({a}, {b}, {c}): {reason}")]
    DegenerateDatum { a: u32, b: u32, c: u32, reason: &'static str },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("no suitable prime found below {0}")]
    NoPrime(u64),
    #[error("character table construction failed: {0}")]
    CharacterTable(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;
