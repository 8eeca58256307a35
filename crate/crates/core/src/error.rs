use thiserror::Error;

/// Errors raised for invalid inputs. Numerical non-convergence is reported
/// through [`crate::QuadStatus`] on a successful result instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid quadrature configuration: {0}")]
    Config(String),

    #[error("{entry}: constraint violated: {constraint}")]
    Constraint { entry: String, constraint: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("{0} is not a principal-value entry")]
    NotPrincipalValue(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("report format error: {0}")]
    Format(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
