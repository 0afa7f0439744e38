use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("input error: {0}")]
    Input(String),
    #[error("the unit ideal has no {0}")]
    UnitIdeal(&'static str),
    #[error("ideal is not cellular: {0} is neither nilpotent nor a nonzerodivisor")]
    NotCellular(String),
    #[error("ideal is not mesoprimary: {0}")]
    NotMesoprimary(String),
    #[error("ideal is not homogeneous for the grading: {0}")]
    NotHomogeneous(String),
    #[error("grading is not positive: {0}")]
    NotPositive(String),
    #[error("degree bound {bound} too small: {detail}")]
    BoundTooSmall { bound: i64, detail: String },
    #[error("unsupported: {0}")]
    Capability(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Field(FieldError::MissingRoots { .. })
            | Error::Field(FieldError::Unsupported(..))
            | Error::Capability(_)
            | Error::Resource(_) => 3,
            Error::BoundTooSmall { .. } => 4,
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
