use thiserror::Error;

/// Errors shared by every solver in the crate.
///
/// Numeric payloads are carried as full-precision decimal strings so the
/// error type stays independent of the scalar type that produced it.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Working precision below the guard required for the requested
    /// computation. This is a refusal, never a silent degradation.
    #[error("insufficient precision: {required} digits required, {actual} configured ({context})")]
    Precision {
        required: u32,
        actual: u32,
        context: String,
    },

    /// A derivative smaller in magnitude than the precision floor; Newton
    /// cannot proceed.
    #[error("singular derivative at {at} (|f'| = {magnitude})")]
    SingularDerivative { at: String, magnitude: String },

    #[error("singular Jacobian at ({x}, {y})")]
    SingularJacobian { x: String, y: String },

    /// An iteration ran out of budget. `trace` holds the ladder or iterate
    /// history that was available when the failure was detected.
    #[error("no convergence after {iterations} iterations; last iterate {last}")]
    ConvergenceFailure {
        iterations: u32,
        last: String,
        trace: Vec<String>,
    },

    /// A root solve left the basin of the sought branch and landed on a
    /// different state (or an unphysical region).
    #[error("branch loss: {0}")]
    BranchLoss(String),

    /// A request above a hard structural cap (e.g. symbolic secular
    /// polynomials above the coefficient-growth guard).
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
