//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document (edge list or labelling file).
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A vertex id outside `[0, n)`.
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexRange { vertex: usize, n: usize },

    /// A precondition or structural invariant was violated.
    #[error("{0}")]
    Validation(String),

    /// Random regular generation gave up after the retry cap.
    #[error("regular graph generation failed after {attempts} attempts")]
    GenerationFailure { attempts: usize },

    /// The q' parameter search ran past its safety cap without finding
    /// a q' satisfying a_t - 4c*b_t > 0.
    #[error("q' search for t = {t}, c = {c} exceeded cap {cap}")]
    QPrimeCapExceeded { t: u32, c: u32, cap: u32 },

    /// An exhaustive enumeration ran out of budget.
    #[error("enumeration budget {budget} exhausted")]
    BudgetExhausted { budget: u64 },

    /// Girth precondition of the resampling labeller.
    #[error("girth {girth} is below 2k = {required}; pass the low-girth override to proceed")]
    GirthTooSmall { girth: String, required: usize },
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
