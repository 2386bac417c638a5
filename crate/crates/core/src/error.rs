use thiserror::Error;

/// Errors raised by the numerical kernels and evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument sits on a pole of the function (e.g. gamma at a nonpositive integer).
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    /// Argument outside the domain where the routine is defined.
    #[error("domain error in {function}: {reason}")]
    Domain { function: &'static str, reason: String },

    /// Lerch transcendent evaluated at z = 1 with order at most one.
    #[error("singular point: {0}")]
    Singularity(String),

    /// The certified truncation bound could not reach the tolerance.
    #[error("tolerance {tol:e} unreachable within {cap} terms")]
    ToleranceUnreachable { tol: f64, cap: usize },

    /// A quadrature did not meet its tolerance within the panel budget.
    #[error("no convergence in {method}: estimated error {err_est:e} after {work} evaluations")]
    NonConvergence { method: &'static str, err_est: f64, work: usize },

    /// Asymptotic regime requested does not match the exponent.
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),
}

impl Error {
    pub fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { function, reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
