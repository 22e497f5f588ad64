use thiserror::Error;

use crate::algebra::VarId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("variable {0} has no assigned value")]
    MissingAssignment(VarId),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("size cap exceeded: {what} = {value} (limit {limit})")]
    SizeCap {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
