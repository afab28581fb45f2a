use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<i64>),
    #[error("invalid signature {0:?}: entries must be weakly decreasing and non-empty")]
    InvalidSignature(Vec<i64>),
    #[error("length violation: need {needed} rows but only {available} are available")]
    LengthViolation { needed: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("budget exceeded: {what} is {requested}, limit {limit}")]
    BudgetExceeded { what: &'static str, requested: String, limit: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid Bratteli diagram: {0}")]
    InvalidDiagram(String),
    #[error("incompatible K0 homomorphism: {0}")]
    IncompatibleK0(String),
    #[error("trace weights did not converge: spread {spread:e} exceeds tolerance {tolerance:e}")]
    NonConvergent { spread: f64, tolerance: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, requested: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded { what, requested: requested.to_string(), limit: limit.to_string() }
    }
}
