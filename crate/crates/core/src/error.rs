use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{kind} index {index} out of range (size {size})")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        size: usize,
    },

    #[error("duplicate edge between variable {variable} and check {check}")]
    DuplicateEdge { variable: usize, check: usize },

    #[error("variable subset must be non-empty")]
    EmptySubset,

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Whether the error signals a broken internal invariant rather than bad
    /// input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}
