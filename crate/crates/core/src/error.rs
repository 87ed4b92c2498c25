use thiserror::Error;

use crate::series::MonthStamp;

/// Errors raised by the estimation and modelling routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("month ordering violated: {0} is after {1}")]
    Ordering(MonthStamp, MonthStamp),

    #[error("series do not overlap: {0}")]
    Alignment(String),

    #[error("value {value} at {date} is outside the domain: {reason}")]
    Domain {
        date: MonthStamp,
        value: f64,
        reason: &'static str,
    },

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("non-positive opportunity cost: i = {rate}, phi = {phi}")]
    NonPositiveOpportunityCost { rate: f64, phi: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),
}

impl Error {
    /// True for failures caused by numerically degenerate data rather than bad input.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::DegenerateInput(_) | Error::DegenerateRegression(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
