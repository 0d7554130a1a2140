use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("both amplitudes are zero")]
    ZeroVector,

    #[error("Bloch vector has norm {norm}, expected a pure state (norm 1)")]
    NotPure { norm: f64 },

    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),

    #[error("{what} = {value} is outside its domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid detector: {0}")]
    InvalidDetector(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("unknown state label `{0}` (expected alpha, beta, delta or minus_delta)")]
    UnknownLabel(String),

    #[error("linear system is singular (|det| = {det:e})")]
    SingularSystem { det: f64 },

    #[error("insufficient data: {rounds} rounds per bit, need at least {min}")]
    InsufficientData { rounds: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
