use thiserror::Error;

/// Errors shared across the numeric modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension must be in 1..={max}, got {got}")]
    BadDimension { got: usize, max: usize },

    #[error("complex dimension must lie in 2..=32 (tangent dimension at most 64), got {0}")]
    BadComplexDimension(usize),

    #[error("input contains non-finite entries")]
    NonFiniteInput,

    #[error("vector length {got} does not match frame dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("step size must be positive and finite, got {0}")]
    BadStep(f64),

    #[error("vector field returned a non-finite derivative")]
    NonFiniteDerivative,

    #[error("pair is not orthonormal within {tol}")]
    NotOrthonormal { tol: f64 },

    #[error("curvature parameter must be finite and nonzero, got {0}")]
    BadCurvatureParameter(f64),

    #[error("ruled form requires beta != 0")]
    RuledBetaZero,

    #[error("flow state has beta = 0 (the structure equations are singular there)")]
    BetaSingular,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error(
        "zero or constant polynomial where positive degree in the eliminated variable is required"
    )]
    ResultantDegree,
}
