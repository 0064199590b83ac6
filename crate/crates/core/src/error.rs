use thiserror::Error;

/// Errors raised by the numerical, channel, relaying and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelayError {
    #[error("dimension mismatch: {op} of {lhs:?} and {rhs:?}")]
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is numerically singular (pivot magnitude {pivot:e})")]
    Singular { pivot: f64 },

    #[error("zero-forcing is infeasible with N = {n} antennas for K = {k} pairs")]
    ZfInfeasible { n: usize, k: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {index} out of range for {len} users")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{0} has no single relay transformation matrix")]
    UnsupportedScheme(&'static str),

    #[error("no closed-form large-N limit exists for the {0} power setting")]
    UnsupportedCase(&'static str),

    #[error("trial {trial} produced a non-finite value ({value})")]
    NonFiniteTrial { trial: usize, value: f64 },

    #[error("row ({scheme}, N = {n}) has no asymptote")]
    MissingAsymptote { scheme: &'static str, n: usize },
}

pub type Result<T> = std::result::Result<T, RelayError>;
