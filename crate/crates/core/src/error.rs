use thiserror::Error;

/// Errors raised by field evaluation, family construction, stepping and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input point ({x}, {y})")]
    NonFinitePoint { x: f64, y: f64 },

    #[error("evaluation produced a non-finite value")]
    EvaluationOverflow,

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("point lies on a pole of the modified Hamiltonian (factor {factor:e})")]
    PoleOfModifiedHamiltonian { factor: f64 },

    #[error("measure density is singular at this point (denominator {denominator:e})")]
    MeasureSingularity { denominator: f64 },

    #[error("Kahan step is singular: |det(I - h/2 J)| = {det:e} below tolerance")]
    SingularStep { det: f64 },

    #[error("map Jacobian is singular: |det(I + h/2 J(p'))| = {det:e} below tolerance")]
    SingularJacobian { det: f64 },

    #[error("reference integration did not converge to {tol:e} after {halvings} halvings")]
    NoConvergence { tol: f64, halvings: u32 },

    #[error("only {used} of {attempted} samples accepted (need at least 10%)")]
    InsufficientSamples { attempted: usize, used: usize },

    #[error("orbit terminated at step {step} before reaching the horizon: {reason}")]
    OrbitTerminated { step: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
