use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vector is not in the column span")]
    NotInSpan,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("degree {degree} is above the horizon {horizon}")]
    AboveHorizon { degree: usize, horizon: isize },
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("map is not injective in degree {0}")]
    NotInjective(usize),
    #[error("modules are over different categories or fields")]
    Mismatch,
    #[error("horizon exhausted: {0}")]
    HorizonExhausted(String),
    #[error("inconclusive within horizon: {0}")]
    Inconclusive(String),
    #[error("unsupported category kind: {0}")]
    UnsupportedKind(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
