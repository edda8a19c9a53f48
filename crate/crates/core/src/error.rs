use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("degenerate shape: {0}")]
    Degenerate(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("raster resolution insufficient: {0}")]
    Resolution(String),
    #[error("projection failed: {0}")]
    ProjectionFailed(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("no sign change of the function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("shape file: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
