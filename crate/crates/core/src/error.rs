use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown subalgebra `{0}`")]
    UnknownSubalgebra(String),

    #[error("subalgebra is not closed: {0}")]
    Closure(String),

    #[error("subalgebras belong to different fusion data")]
    MismatchedParent,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("group order exceeds cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup `{0}` is not normal")]
    NotNormal(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
