use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("queue index {index} out of range for {len} queues")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("state has {found} entries, model has {expected} queues")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("time offset {offset} outside the update interval [0, {delta}]")]
    OffsetOutOfRange { offset: f64, delta: f64 },

    #[error("linear approximation is singular (denominator {denominator:e})")]
    SingularApproximation { denominator: f64 },

    #[error("quadratic approximation has no real root (discriminant {discriminant:e})")]
    NoRealRoot { discriminant: f64 },

    #[error("{0}")]
    WrongParity(String),

    #[error("trajectory too short: {available} time units after burn-in, need {required}")]
    TrajectoryTooShort { available: f64, required: f64 },

    #[error("non-finite value produced at t = {time}")]
    NonFinite { time: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
