use thiserror::Error;

/// Errors raised by the arithmetic, search and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was applied outside its domain (zero inverse, field mismatch, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A field is too small for the requested choice of elements.
    #[error("field {field} has too few elements: {reason}")]
    Capacity { field: String, reason: String },

    /// Exhaustive enumeration would exceed the configured size cap.
    #[error("size {size} exceeds the permutation cap {cap}")]
    Size { size: usize, cap: usize },

    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),

    /// A documented precondition does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// An exhaustive search ran out of its step budget.
    #[error("search exceeded its budget of {budget} (stopped after {needed})")]
    Resource { needed: u128, budget: u128 },

    /// Operation not available for this input kind.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Lift construction exhausted every strategy.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
