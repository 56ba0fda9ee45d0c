use thiserror::Error;

use crate::polyring::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("unknown variable '{0}'")]
    UnknownVariable(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid tracker configuration: {0}")]
    InvalidConfig(String),

    #[error("system is not square: {equations} equations in {unknowns} unknowns")]
    NotSquare { equations: usize, unknowns: usize },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("seed disagreement for {what}: counts {counts:?}")]
    SeedDisagreement { what: String, counts: Vec<usize> },
}
