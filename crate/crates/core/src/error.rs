use thiserror::Error;

use crate::report::CheckReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax or resolution problem in a DSL document, pinned to a source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("kind mismatch: {0}")]
    Kind(String),

    /// A gated construction was asked to run on input that fails its checks.
    #[error("precondition failed: {what}")]
    Precondition {
        what: String,
        report: Box<CheckReport>,
    },

    #[error("soundness error: {0}")]
    Soundness(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn precondition(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition {
            what: what.into(),
            report: Box::new(report),
        }
    }
}
