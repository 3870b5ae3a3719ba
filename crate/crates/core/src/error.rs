use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HvError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points must have at least {min} coordinates, got {found}")]
    DimensionTooSmall { min: usize, found: usize },

    #[error("coordinate {coord} of point {index} is not finite")]
    NonFiniteCoordinate { index: usize, coord: usize },

    #[error("operation requires a non-empty front")]
    EmptyFront,

    #[error("point index {index} out of range for front of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subset size {k} out of range for front of size {n}")]
    SubsetSizeOutOfRange { k: usize, n: usize },

    #[error("point {index} does not strongly dominate the reference point")]
    ReferenceNotStronglyDominated { index: usize },

    #[error("point is already a member of the set")]
    AlreadyMember,

    #[error("point is not a member of the set")]
    NotAMember,

    #[error("input front must be mutually nondominated for this operation")]
    DominatedInput,

    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("{what} supports at most {max} points, got {found}")]
    TooManyPoints {
        what: &'static str,
        max: usize,
        found: usize,
    },

    #[error("algorithm `{algorithm}` does not apply to {dim}-dimensional fronts")]
    AlgorithmDimensionMismatch { algorithm: &'static str, dim: usize },

    #[error("contribution table has {found} entries but the front has {expected} points")]
    TableSizeMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, HvError>;
