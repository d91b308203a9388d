use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Output states that were required to be mutually orthonormal are not.
    #[error("output states are not mutually orthonormal: |<{alpha}|{beta}>| = {overlap:.3e}")]
    NonOrthogonalOutputs {
        alpha: usize,
        beta: usize,
        overlap: f64,
    },

    /// Cross-set overlap that must vanish for set discrimination does not.
    #[error("cross-set overlap violation: |<{alpha}|{beta}>| = {overlap:.3e}")]
    CrossSetOverlap {
        alpha: usize,
        beta: usize,
        overlap: f64,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// Probability mass escaped the measurement (incomplete measurement).
    #[error("measurement integrity: unassigned probability {leftover:.3e}")]
    MeasurementIntegrity { leftover: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
