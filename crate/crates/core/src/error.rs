use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate basis name `{0}`")]
    DuplicateBasisName(String),
    #[error("unknown basis name `{0}`")]
    UnknownBasisName(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not an isomorphism: rank drops in degree {degree}")]
    NotInvertible { degree: i64 },
    #[error("invalid retraction: {0}")]
    InvalidRetraction(String),
    #[error("cap out of range: {0}")]
    Cap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
