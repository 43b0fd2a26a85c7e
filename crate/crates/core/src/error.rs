use thiserror::Error;

/// Errors raised by the arithmetic layers and the verification driver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("modulus {modulus:#b} is reducible over F2: divisible by {factor:#b}")]
    ReducibleModulus { modulus: u64, factor: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("element is not a unit (valuation {valuation} >= 1)")]
    NotUnit { valuation: u32 },

    #[error("precision too low: need m >= {needed}, have m = {have}")]
    Precision { needed: u32, have: u32 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
