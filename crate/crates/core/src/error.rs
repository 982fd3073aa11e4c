use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid band: {0}")]
    InvalidBand(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("block dimension must be at least 1")]
    ZeroDimension,

    #[error("matrix dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("root finder did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    NotConverged {
        iterations: usize,
        worst_residual: f64,
        roots: Vec<Complex64>,
        residuals: Vec<f64>,
    },

    #[error(
        "eigensolver did not converge: off-diagonal residual {residual:e} after {sweeps} sweeps"
    )]
    EigenNotConverged { sweeps: usize, residual: f64 },

    #[error("band is not factorable: symbol reaches {min_symbol:e} at θ = {theta}")]
    NotFactorable { min_symbol: f64, theta: f64 },

    #[error("identity violated: {what} ({lhs} vs {rhs})")]
    IdentityViolation {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
