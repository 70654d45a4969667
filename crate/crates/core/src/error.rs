use thiserror::Error;

/// Errors raised across the geometry and algebra layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a polynomial of degree {expected}, got degree {found}")]
    Degree { expected: usize, found: i64 },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPoly,

    #[error("division error: {0}")]
    Division(String),

    #[error("invalid normal-form coefficients: {0}")]
    InvalidCoeffs(String),

    #[error("point ({u}, {v}) is singular: EG - F^2 = {det:e}")]
    SingularPoint { u: f64, v: f64, det: f64 },

    #[error("curve speed {0:e} is degenerate")]
    DegenerateSpeed(f64),

    #[error("theta = {theta} is inside the axis guard band (|sin theta| < {guard})")]
    NearAxis { theta: f64, guard: f64 },

    #[error("ruled surface is cylindrical here: {0}")]
    Cylindrical(String),

    #[error("director of the normal developable is undefined: kappa2 and kappa3 both vanish")]
    UndefinedDirector,

    #[error("evaluation on the base curve (beta = 0)")]
    OnCurve,

    #[error("could not resolve the order in r: {0}")]
    OrderUnresolved(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
