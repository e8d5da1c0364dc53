use thiserror::Error;

/// Errors raised by the geometry pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A matrix or metric is singular or too badly conditioned to invert.
    #[error("singular {what} at {at:?} (condition estimate {condition:e})")]
    Singular {
        what: &'static str,
        at: Vec<f64>,
        condition: f64,
    },

    #[error("numeric range exceeded: {0}")]
    NumericRange(String),

    /// A point or finite-difference stencil left the chart's safe domain.
    #[error("point {at:?} lies outside the safe domain of {chart}")]
    Domain { chart: String, at: Vec<f64> },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
