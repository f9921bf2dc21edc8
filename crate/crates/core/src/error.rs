use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid generator {generator} for a braid on {strands} strands")]
    InvalidGenerator { generator: i64, strands: usize },

    #[error("closure is not a knot")]
    NotAKnot,

    #[error("matrix of dimension {0} has no reduced part")]
    DimensionTooSmall(usize),

    #[error("non-integer power of q in {0}")]
    NonIntegerPower(String),

    #[error("inverse series did not terminate within {iterations} terms")]
    Unterminated { iterations: usize },

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("corpus error: {0}")]
    Corpus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
