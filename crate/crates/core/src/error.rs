use thiserror::Error;

/// Errors produced by the analytic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("boost speed {speed} is not subluminal")]
    SuperluminalBoost { speed: f64 },

    #[error("constraint {constraint} violated: residual {residual:e} exceeds {tolerance:e}")]
    ConstraintViolation {
        constraint: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("v^2 = {v2} exceeds 1 (inconsistent state)")]
    SuperunitaryV2 { v2: f64 },

    #[error("state carries {got} derivatives of x, {needed} are required")]
    InsufficientDerivatives { needed: usize, got: usize },

    #[error("{operation} is not available for Lagrangian order {order}")]
    UnsupportedOrder {
        operation: &'static str,
        order: usize,
    },

    #[error("polynomial root finder did not converge (residual {residual:e})")]
    RootFindingFailure { residual: f64 },

    #[error("leading coefficient k_{order} vanishes")]
    DegenerateLeadingCoefficient { order: usize },

    #[error("integration diverged at tau = {tau}")]
    NonFiniteState { tau: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("linear system is singular (condition number {condition:e})")]
    SingularSystem { condition: f64 },
}

impl Error {
    /// Numerical failures, as opposed to physics-constraint violations.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RootFindingFailure { .. }
                | Error::NonFiniteState { .. }
                | Error::SingularSystem { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
