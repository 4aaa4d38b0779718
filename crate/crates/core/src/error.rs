use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("binomial cache holds rows up to {max_n}, row {requested} requested")]
    CacheOverflow { requested: i64, max_n: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("sector matrix constructions disagree by {diff:e} at entry ({row}, {col})")]
    Inconsistent { row: usize, col: usize, diff: f64 },

    #[error("association scheme axiom {axiom} violated at (i={i}, j={j}, k={k}): {detail}")]
    AxiomViolation {
        axiom: &'static str,
        i: usize,
        j: usize,
        k: usize,
        detail: String,
    },

    #[error("count mismatch for {what}: exhaustive {counted}, closed form {formula}")]
    CountMismatch {
        what: String,
        counted: u64,
        formula: u64,
    },

    #[error("expected {expected} partial rates, got {got}")]
    LengthMismatch { expected: String, got: usize },

    #[error("invalid cycle class: {0}")]
    InvalidClass(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
