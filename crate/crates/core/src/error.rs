use thiserror::Error;

/// Errors produced by the FDDS library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("state index {index} out of range for a system with {len} states")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("result would have {size} states, above the cap of {cap}")]
    SizeOverflow { size: String, cap: String },

    #[error("capped evaluation exceeded its size cap")]
    CapExceeded,

    #[error("minimum cycle length of the empty system is undefined")]
    EmptySystem,

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("unroll trees have different depths ({0} and {1})")]
    DepthMismatch(usize, usize),

    #[error("tree period {period} does not divide cycle length {len}")]
    PeriodMismatch { period: usize, len: usize },

    #[error("unroll tree of depth {0} is too shallow to rebuild its component")]
    TreeTooShallow(usize),

    #[error("the system has transient states; a sum of cycles was expected")]
    NotSumOfCycles,

    #[error("solution lacks a cycle of length {0}")]
    MissingCycle(String),

    #[error("enumeration budget of {0} candidates exceeded")]
    BudgetExceeded(usize),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Signal raised by capped evaluation when an intermediate size passes the cap.
///
/// Solvers treat it as "no solution along this branch" rather than a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

impl From<Overflow> for Error {
    fn from(_: Overflow) -> Self {
        Error::CapExceeded
    }
}
