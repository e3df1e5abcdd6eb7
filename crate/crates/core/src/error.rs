use thiserror::Error;

/// Errors produced by the coefficient functions, solvers, bounds and checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no sign change of the shooting function up to lambda_max = {lambda_max:.6e}")]
    NoBracketFound { lambda_max: f64 },

    #[error("diameter D = {diameter} exceeds the maximal diameter {maximal} allowed by {constraint}")]
    DiameterExceedsMaximal {
        diameter: f64,
        maximal: f64,
        constraint: String,
    },

    #[error("inradius R = {inradius} is not below the validity radius {radius} (first zero of {binding})")]
    InradiusExceedsValidity {
        inradius: f64,
        radius: f64,
        binding: String,
    },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("Rayleigh quotient denominator {0:.3e} is numerically zero")]
    ZeroDenominator(f64),

    #[error("time stepping failed: {0}")]
    StabilityFailure(String),

    #[error("initial data is constant; oscillation decay is undefined")]
    DegenerateInitialData,

    #[error("invalid surface profile: {0}")]
    ProfileError(String),

    #[error("shooting ({shooting:.12e}) and finite-difference ({finite_difference:.12e}) eigenvalues disagree by {relative:.3e} relative")]
    MethodDisagreement {
        shooting: f64,
        finite_difference: f64,
        relative: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for violations of a theorem's geometric preconditions
    /// (diameter caps, inradius radius, dimension).
    pub fn is_validity(&self) -> bool {
        matches!(
            self,
            Error::DiameterExceedsMaximal { .. }
                | Error::InradiusExceedsValidity { .. }
                | Error::InvalidDimension(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
