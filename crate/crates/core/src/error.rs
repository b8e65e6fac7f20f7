use thiserror::Error;

use crate::problems::Family;

/// Failure modes of the solver pipeline.
///
/// Integration and radicand errors are expected on some branches: they mean
/// that no physical solution corresponds to the requested star parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NitmError {
    #[error("solution became non-finite at eta = {eta}")]
    NonFinite { eta: f64 },
    #[error("step limit of {max_steps} exceeded at eta = {eta}")]
    StepLimit { max_steps: usize, eta: f64 },
    #[error("non-positive radicand {radicand} in group parameter")]
    NonPositiveRadicand { radicand: f64 },
    #[error("family not solvable by non-ITM: {0}")]
    Unsupported(Family),
    #[error("no interior extremum on [{lo}, {hi}]")]
    NoExtremum { lo: f64, hi: f64 },
    #[error("target has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root finder did not converge in {0} iterations")]
    MaxIterations(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl NitmError {
    /// Short machine-readable tag, used in sweep status columns.
    pub fn kind(&self) -> &'static str {
        match self {
            NitmError::NonFinite { .. } => "non_finite",
            NitmError::StepLimit { .. } => "step_limit",
            NitmError::NonPositiveRadicand { .. } => "non_positive_radicand",
            NitmError::Unsupported(_) => "unsupported",
            NitmError::NoExtremum { .. } => "no_extremum",
            NitmError::NoSignChange { .. } => "no_sign_change",
            NitmError::MaxIterations(_) => "max_iterations",
            NitmError::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, NitmError>;
