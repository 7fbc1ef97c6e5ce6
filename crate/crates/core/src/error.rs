use thiserror::Error;

pub type Result<T, E = FdtdError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FdtdError {
    /// An argument lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// A scenario, grid or geometry failed validation.
    #[error("validation error: {0}")]
    Validation(String),
    /// A field value became NaN or infinite during a run.
    #[error("non-finite {field} at step {step}, index {index:?}")]
    NonFinite {
        step: usize,
        field: &'static str,
        index: Vec<usize>,
    },
    /// A truncated series was asked to run with too few terms.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// A design chain produced a physically meaningless geometry.
    #[error("infeasible design: {0}")]
    Infeasible(String),
}

impl FdtdError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        FdtdError::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        FdtdError::Validation(msg.into())
    }
}
