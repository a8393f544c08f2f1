use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid series specification: {0}")]
    InvalidSpec(String),

    #[error("series diverges: |rho| = {0} is not below 1")]
    Divergent(String),

    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("insufficient precision: need {needed} bits, have {have}")]
    InsufficientPrecision { needed: u64, have: u64 },

    #[error("verification failed: first differing digit at position {position} ({detail})")]
    VerificationFailed { position: usize, detail: String },

    #[error("pole collision while computing coefficient A_{k}")]
    PoleCollision { k: usize },

    #[error("solver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
