use thiserror::Error;

use crate::hypergeometric::EvalResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{name} = {value} is out of domain: expected {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// The series hit its term cap before meeting the tolerance. `best`
    /// carries the partial sum and an honest error estimate.
    #[error("series did not converge after {terms} terms (value {}, error estimate {})", best.value, best.abs_err_estimate)]
    NonConvergence { best: EvalResult, terms: usize },

    #[error("no turning point found: {0}")]
    NotFound(String),

    #[error("sequence has {reversals} trend reversals; at most one is allowed")]
    MixedPattern { reversals: usize },
}
