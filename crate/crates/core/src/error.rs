use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operands belong to different polynomial rings")]
    RingMismatch,

    #[error("no image given for variable `{0}`")]
    MissingImage(String),

    #[error("variable index {0} is outside the ring")]
    ForeignVariable(usize),

    #[error("the zero polynomial does not generate a proper ideal")]
    ZeroGenerator,

    #[error("substitution is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported input class: {0}")]
    Unsupported(String),

    #[error("search budget exceeded after {explored} of {total} candidates")]
    BudgetExceeded { explored: u64, total: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
