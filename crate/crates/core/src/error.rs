use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rank/coordinate count outside the supported range for the family.
    InvalidRank(String),
    /// An enumeration would exceed the element-count budget.
    BudgetExceeded { size: u128, budget: u128 },
    /// The intersection graph has a clique larger than the dimension,
    /// so the structure is not that of a simple polytope.
    NonSimple(String),
    /// Malformed input (K out of range, bad anchor, non-bijective images, ...).
    BadInput(String),
    /// A computation produced a value that a verified statement rules out;
    /// signals a bug (or a falsified statement) rather than bad input.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRank(s) => write!(f, "invalid rank: {s}"),
            Error::BudgetExceeded { size, budget } => {
                write!(f, "budget exceeded: group of order {size} > budget {budget}")
            }
            Error::NonSimple(s) => write!(f, "non-simple structure: {s}"),
            Error::BadInput(s) => write!(f, "bad input: {s}"),
            Error::InvariantViolation(s) => write!(f, "invariant violation: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
