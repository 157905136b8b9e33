use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain size must be at least 1, got {0}")]
    InvalidSize(i64),

    #[error("cell (row {row}, index {index}) is outside the domain of size {n}")]
    InvalidCoord { row: i64, index: i64, n: u32 },

    #[error("resampled row count {k} outside 1..={max}")]
    RowCountOutOfRange { k: u32, max: u32 },

    #[error("{name} = {value} is not a power of two")]
    NotPowerOfTwo { name: &'static str, value: u32 },

    #[error("generator state ({0}, {1}, {2}) out of range")]
    InvalidState(u32, u32, u32),

    #[error("trial number must be at least 1")]
    InvalidTrial,

    #[error("coloring does not belong to this domain")]
    DomainMismatch,

    #[error("polyline must not be empty")]
    EmptyPolyline,

    #[error("brute-force oracle limited to M + N <= {limit}, got {got}")]
    TooLargeForOracle { got: usize, limit: usize },

    #[error("tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),

    #[error("exploration left the domain or failed to terminate: {0}")]
    Structural(String),

    #[error("empty sample")]
    EmptySample,

    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
