use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown step family `{0}`")]
    UnknownFamily(String),
    #[error("alphabet `{0}` is infinite; a bound on |i|+|j| is required")]
    UnboundedAlphabet(String),
    #[error("step ({0},{1}) is not in alphabet `{2}`")]
    StepNotInAlphabet(i64, i64, String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("walk leaves the quarter plane at step {0}")]
    NotConfined(usize),
    #[error("walk has wrong endpoint: expected {expected}, got {got}")]
    WrongEndpoint { expected: String, got: String },
    #[error("walk has wrong length: {0}")]
    WrongLength(String),
    #[error("forbidden pattern `{0}` at position {1}")]
    ForbiddenPattern(String, usize),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("boundary policy mismatch: {0}")]
    Boundary(String),
    #[error("contraction rule: {0}")]
    Rule(String),
    #[error("growth failed: {0}")]
    Growth(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
