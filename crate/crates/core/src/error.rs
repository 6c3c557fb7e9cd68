use thiserror::Error;

/// Errors raised across the library.
///
/// Variants are grouped by the kind of failure so that front ends can map
/// them onto exit codes (see [`Error::category`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank deficient: smallest singular value {smallest:e} <= {threshold:e}")]
    RankDeficient { smallest: f64, threshold: f64 },

    #[error("canonical form needs 2m <= n, got m = {m}, n = {n}")]
    RankTooLarge { m: usize, n: usize },

    #[error("columns are not orthonormal: max deviation {deviation:e} exceeds {tol:e}")]
    NotOrthonormal { deviation: f64, tol: f64 },

    #[error("members {first} and {second} coincide (trace inner product {value})")]
    DuplicateMember { first: usize, second: usize, value: f64 },

    #[error("numerical health check failed: {0}")]
    NumericalHealth(String),

    #[error("partition {partition} has more than {vars} parts")]
    LengthExceedsVariables { partition: String, vars: usize },

    #[error("weight {0:?} is not dominant (must be nonincreasing)")]
    NotDominant(Vec<i64>),

    #[error("partition {partition} is too long for n = {n} (needs 2*len <= n)")]
    PartitionTooLong { partition: String, n: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),

    #[error("unsupported partition {0}")]
    UnsupportedPartition(String),

    #[error("zonal formula does not match the explicit form for {partition}: general = {general}, explicit = {explicit}")]
    ValidationFailure {
        partition: String,
        general: String,
        explicit: String,
    },

    #[error("polynomial vanishes at the all-ones point")]
    DegenerateAtOnes,

    #[error("degree {degree} exceeds the available zonal degree {available}")]
    DegreeTooHigh { degree: usize, available: usize },

    #[error("bound denominator vanishes")]
    DegenerateDenominator,

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("joint eigenspaces could not be separated: {0}")]
    NumericalDegeneracy(String),

    #[error("clusters at {0} and {1} are closer than three times the tolerance")]
    ClusterAmbiguity(f64, f64),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used by the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Validation,
    Numerical,
    SizeLimit,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::NumericalHealth(_)
            | Error::NumericalDegeneracy(_)
            | Error::RankDeficient { .. }
            | Error::ClusterAmbiguity(..)
            | Error::ValidationFailure { .. } => ErrorCategory::Numerical,
            Error::SizeLimit(_) => ErrorCategory::SizeLimit,
            _ => ErrorCategory::Validation,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
