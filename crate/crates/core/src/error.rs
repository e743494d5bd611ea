//! Crate-wide error type.
//!
//! Construction and counting entry points return `Result`; element-level
//! arithmetic treats contract violations (mixed-field operands, inversion of
//! zero) as programmer errors and panics instead.

use thiserror::Error;

/// Errors reported by fallible operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `p` passed to a field constructor is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The requested field order exceeds the supported ceiling.
    #[error("field order {q} exceeds the supported maximum {max}")]
    OrderTooLarge { q: u64, max: u64 },

    /// The extension degree must be at least 1.
    #[error("extension degree must be >= 1")]
    ZeroDegree,

    /// An element index outside `[0, q)` was supplied.
    #[error("element index {index} out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },

    /// Interpolation was given two points with the same abscissa.
    #[error("duplicate interpolation abscissa at index {0}")]
    DuplicateAbscissa(u32),

    /// A symmetric-combination constructor was given a zero leading
    /// coefficient (or an empty coefficient list).
    #[error("leading coefficient of a symmetric combination must be nonzero")]
    LeadingCoefficientZero,

    /// The number of variables must be at least 1.
    #[error("number of variables must be >= 1")]
    ZeroVariables,

    /// A distinct-point count was requested with more variables than
    /// available evaluation points.
    #[error("cannot choose {k} distinct points from a set of size {size}")]
    SubsetTooSmall { k: usize, size: usize },

    /// A supplied evaluation subset contains a repeated element.
    #[error("evaluation subset contains a repeated element (index {0})")]
    SubsetNotDistinct(u32),

    /// An enumeration would exceed the configured work budget.
    #[error("estimated work {estimated} exceeds budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u64 },

    /// A point count does not fit in the result type.
    #[error("point count overflows the supported integer range")]
    CountOverflow,

    /// A parameter combination falls outside the hypotheses of the requested
    /// verification experiment.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A fast-path result disagreed with its independent oracle. This always
    /// indicates an implementation bug, never a mathematical finding.
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
