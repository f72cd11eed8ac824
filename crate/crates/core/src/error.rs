use thiserror::Error;

use crate::polytope::PolytopeReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid triangulation: {0}")]
    Invalid(String),

    #[error("linear program: {0}")]
    Lp(String),

    #[error("E-coordinate is not in the polytope (LP minimum {})", .0.lp_minimum)]
    Infeasible(Box<PolytopeReport>),

    #[error("no convergence after {iterations} iterations (gradient {gradient:e}, mismatch {mismatch:e}): {reason}")]
    NonConvergence {
        iterations: usize,
        gradient: f64,
        mismatch: f64,
        reason: String,
    },

    #[error("inconsistent metric: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
