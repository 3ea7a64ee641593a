use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("inadmissible material: {0}")]
    Inadmissible(String),

    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    #[error("coincident points: kernel is singular at x = y")]
    CoincidentPoints,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error(
        "GMRES did not converge after {iterations} iterations (relative residual {residual:.3e})"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    #[error("GMRES breakdown: {0}")]
    Breakdown(String),

    #[error("evaluation point {point:?} is closer than {threshold:.3e} to the boundary")]
    TooClose { point: [f64; 2], threshold: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
