use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid branch profile: {0}")]
    InvalidProfile(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("expected {expected} boundary entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("boundary flux is not mean-zero (sum = {sum:e}, tolerance = {tol:e})")]
    NotMeanZero { sum: f64, tol: f64 },

    #[error("diameter {0} is even; the classification here covers odd diameters only")]
    EvenDiameter(usize),

    #[error("diameter {0} is below 3; the classification needs D = 2r + 1 with r >= 1")]
    DiameterTooSmall(usize),

    #[error("order {n} is too small for diameter {d} (need n >= {min})", min = d + 1)]
    OrderTooSmall { n: usize, d: usize },

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("root bracket ({lo}, {hi}) has no sign change")]
    BadBracket { lo: f64, hi: f64 },

    #[error("move rejected: {0}")]
    IllegalMove(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
