use thiserror::Error;

/// Errors raised by triangle, chain, field-line and experiment operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index ({n}, {k}) is outside the triangle")]
    OutOfRange { n: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state ({n}, {k}) is unreachable: T({n}, {k}) = 0")]
    Unreachable { n: usize, k: usize },

    #[error("conditioning event X_{m} = {ell} has probability zero")]
    ZeroProbability { m: usize, ell: usize },

    #[error("horizon {m} exceeds the exact enumeration bound {bound}")]
    EnumerationBound { m: usize, bound: usize },

    #[error("lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),

    #[error("root bracketing failed: {0}")]
    Bracket(String),

    #[error("field line left the slope domain at x = {x}: (x - y) / y = {arg}")]
    IntegrationDomain { x: f64, arg: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
