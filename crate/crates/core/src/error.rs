use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible series: {0}")]
    Incompatible(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precision exceeded: {0}")]
    Precision(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("enumeration budget exceeded: needs {needed} units, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("unsupported in this mode: {0}")]
    Mode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
