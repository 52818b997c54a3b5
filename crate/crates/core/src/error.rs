use thiserror::Error;

/// Errors raised by the curvature engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {value} outside the open interval (0, 1)")]
    Domain { value: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("function is not admissible: {0}")]
    NotAdmissible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not self-adjoint (deviation {0:e})")]
    NotSelfAdjoint(f64),

    #[error("eigendecomposition did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("chart point outside the domain: {0:?}")]
    OutOfChart(Vec<f64>),

    #[error("metric is singular or not positive definite")]
    SingularMetric,

    #[error("embedding Jacobian is degenerate")]
    DegenerateJacobian,

    #[error("codimension must be 1, got {0}")]
    Codimension(isize),

    #[error("finite-difference step {0:e} is not usable")]
    Step(f64),

    #[error("majorization precondition violated: {0}")]
    NotMajorized(String),
}

pub type Result<T> = std::result::Result<T, Error>;
