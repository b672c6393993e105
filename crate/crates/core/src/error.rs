use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ground set of size {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("invalid value: {0}")]
    Value(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    /// An identity that holds mathematically failed; indicates a bug.
    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The ideal has positive dimension: the sampled parameters are not generic.
    #[error("ideal is not zero-dimensional (no pure power of variable {variable} among leading terms)")]
    NotZeroDimensional { variable: String },

    #[error("certification failed after {} attempts (seeds {seeds:?}): {reason}", seeds.len())]
    CertificationFailure { seeds: Vec<u64>, reason: String },
}
