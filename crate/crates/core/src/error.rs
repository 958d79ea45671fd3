use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("sections live over different algebroids")]
    ParentMismatch,
    #[error("malformed morphism: {0}")]
    MalformedMorphism(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("parse error at line {line}, column {column}: expected {expected}")]
    Parse {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("{0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
