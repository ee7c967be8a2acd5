use thiserror::Error;

use crate::verdict::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("truncation: {what} needs {needed} but the cap is {cap}")]
    Truncation {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("degree mismatch at `{key}`: expected {expected}, found {found}")]
    DegreeMismatch {
        key: String,
        expected: i32,
        found: i32,
    },

    #[error("invalid complex: d∘d does not vanish ({0})")]
    InvalidComplex(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("symmetry violation at {witness}")]
    SymmetryViolation { witness: String },

    #[error("precondition failed: {0}")]
    Refused(String),

    #[error("structure is not certified: {}", .0.summary())]
    NotCertified(Box<Verdict>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference `{0}`")]
    Unresolved(String),

    #[error("invalid value for `{key}`: {message}")]
    InvalidValue { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
