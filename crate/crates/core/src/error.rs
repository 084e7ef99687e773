use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by field evaluation, quadrature and configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation within {distance:e} of a pole at {location}")]
    PoleProximity { location: Complex64, distance: f64 },

    #[error("component is discontinuous across the ray phi = {phi}; use a one-sided limit or an assembled field")]
    JumpLine { phi: f64 },

    #[error("precision target missed: error estimate {achieved:e} > requested {requested:e} (value {value})")]
    Precision {
        achieved: f64,
        requested: f64,
        value: Complex64,
    },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("extrapolation did not converge; raw sequence {raw:?}")]
    Extrapolation { raw: Vec<Complex64> },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
