use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("substitution is not invertible")]
    NotInvertible,
    #[error("relation is not of straightening shape: {0}")]
    NotStraightening(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("element is not grouplike: {0}")]
    NotGrouplike(String),
    #[error("element is not invertible: {0}")]
    NotInvertibleElement(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
    #[error("unknown replay case `{0}`")]
    UnknownCase(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Re-anchors an expression-level parse error at a line of an enclosing document.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }
}
