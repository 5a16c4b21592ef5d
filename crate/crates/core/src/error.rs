use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring elements belong to different contexts")]
    ContextMismatch,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("entry {entry} out of range for rank {rank}")]
    WeightOutOfRange { entry: u32, rank: u32 },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("context is not equivariant")]
    NotEquivariant,
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
