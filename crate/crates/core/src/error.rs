use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("symbol `{symbol}` is not valid at level {level}")]
    SymbolInvalidAtLevel { symbol: String, level: usize },
    #[error("projection `{target}` is not valid at level {level}")]
    ProjectionInvalidAtLevel { target: String, level: usize },
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("bimodule precondition failed")]
    NotBimodule(Report),
    #[error("map is not an O-operator")]
    NotOOperator(Report),
    #[error("map is not a Rota-Baxter operator")]
    NotRotaBaxter(Report),
    #[error("operators do not commute")]
    NotCommuting,
    #[error("post-verification failed")]
    PostVerification(Report),
    #[error("tensor does not solve the required equation")]
    EquationFailed(Report),
    #[error("form lacks required property: {0}")]
    MissingFlag(String),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("invalid restriction rule `{rule}` at level {level}")]
    InvalidRule { rule: String, level: usize },
    #[error("invalid variant `{0}`")]
    InvalidVariant(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The report carried by check-style failures, if any.
    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::NotBimodule(r)
            | Error::NotOOperator(r)
            | Error::NotRotaBaxter(r)
            | Error::PostVerification(r)
            | Error::EquationFailed(r) => Some(r),
            _ => None,
        }
    }
}
