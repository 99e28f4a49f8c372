use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input; `line` and `column` are 1-based.
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("move pattern not found: {0}")]
    PatternNotFound(String),
    #[error("not a linking matrix: {}", .0.join("; "))]
    InvalidMatrix(Vec<String>),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    /// An internal consistency check failed. Always a bug.
    #[error("internal verification failure: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}
