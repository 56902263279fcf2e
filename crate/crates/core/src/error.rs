use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported size: {0}")]
    Size(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("invalid rational {0:?}")]
    Rational(String),

    #[error("graph contains a forbidden subgraph")]
    NotFree,

    #[error("certificate error: {0}")]
    Certificate(String),

    #[error("sdp error: {0}")]
    Sdp(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn cert(msg: impl Into<String>) -> Self {
        Error::Certificate(msg.into())
    }
}
