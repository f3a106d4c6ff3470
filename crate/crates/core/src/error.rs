use thiserror::Error;

/// Failures raised by coefficient-domain arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("parameter lists differ: {left:?} vs {right:?}")]
    ParameterMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient is not exact")]
    NotExact,
    #[error("operation on the zero element: {0}")]
    ZeroInput(&'static str),
    #[error("unsupported in this domain: {0}")]
    Unsupported(&'static str),
}

/// Failures raised by the reduction engine and the oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("delta {delta:e} lies inside the tolerance ambiguity band (threshold {threshold:e})")]
    ToleranceFailure { delta: f64, threshold: f64 },
    #[error("step limit of {0} exceeded")]
    StepLimit(usize),
    #[error(transparent)]
    Domain(#[from] DomainError),
}
