use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid cube parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("points belong to different cubes ({left} vs {right})")]
    MismatchedCube { left: String, right: String },

    #[error("operation requires a non-empty point set")]
    EmptySet,

    #[error("{0}")]
    OutOfRange(String),

    #[error("{0} requires q = 2 (got q = {1})")]
    BinaryOnly(&'static str, u32),

    #[error("instance too large: {what} needs {required} operations, guard is {limit}")]
    GuardExceeded { what: &'static str, required: u128, limit: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("internal consistency violated: {0}")]
    Internal(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }

    /// True for resource-guard failures, as opposed to bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
