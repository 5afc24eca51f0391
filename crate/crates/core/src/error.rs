use thiserror::Error;

/// Errors across the library. Validation and domain errors mean the request
/// itself was bad; resource errors mean the request was legal but exceeds a
/// configured compute or memory budget.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A dynamic-programming table would exceed the configured cell budget.
    #[error("{what}: table needs {required} cells but the budget allows {allowed}")]
    CellBudget {
        what: &'static str,
        required: u128,
        allowed: u128,
    },

    /// A combinatorial sweep (e.g. all d-subsets of a code) exceeds its budget.
    #[error("compute budget exceeded: {0}")]
    ComputeBudget(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Bisection was called with endpoints that do not bracket a sign change.
    #[error("bisection bracket failure: {0}")]
    Bracket(String),

    #[error("exhaustive search aborted: {0}")]
    Exhausted(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by blowing a compute/memory budget, as opposed
    /// to invalid input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::CellBudget { .. } | Error::ComputeBudget(_) | Error::Exhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
