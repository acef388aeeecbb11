use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("construction requires g >= {min}, got g = {genus}")]
    GenusTooSmall { genus: u64, min: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("matrix is reducible (digraph not strongly connected)")]
    Reducible,

    #[error("matrix is not primitive (period {period})")]
    NotPrimitive { period: usize },

    #[error("tolerance must be positive")]
    NonPositiveTolerance,

    #[error("interval must be strictly positive, got [{lower}, {upper}]")]
    NonPositiveInterval { lower: f64, upper: f64 },

    #[error("weights must be nonnegative (entry {index} is negative)")]
    NegativeWeight { index: usize },

    #[error("{what} did not reach the requested tolerance after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
