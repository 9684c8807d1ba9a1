use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator {b} is below the minimum {min}")]
    DenominatorTooSmall { b: u64, min: u64 },

    #[error("{r} and {b} are not coprime")]
    NotCoprime { r: u64, b: u64 },

    #[error("value {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("integer {value} exceeds the supported bound {bound}")]
    TooLarge { value: u128, bound: u128 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("series did not reach the requested tolerance: {0}")]
    NotConverged(String),

    #[error("orbit terminated at step {step}: the input is rational")]
    OrbitTerminated { step: usize },

    #[error("strip [{lo}, {hi}) contains no admissible numerator")]
    EmptyStrip { lo: f64, hi: f64 },

    #[error("matrix is not positive definite (order {order})")]
    NotPositiveDefinite { order: usize },

    #[error("no root found: {0}")]
    NoRoot(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
