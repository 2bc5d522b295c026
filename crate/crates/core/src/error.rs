use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("size error: dimension {dim} exceeds the cap of {cap}")]
    Size { dim: usize, cap: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    Convergence { sweeps: usize, residual: f64 },

    #[error("layout error: {0}")]
    Layout(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("positivity error: eigenvalue {0:e} is below tolerance")]
    Positivity(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
