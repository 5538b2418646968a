use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("unknown observation `{0}`")]
    UnknownObservation(String),

    #[error("{op} requires a Boolean output set [\"reject\", \"accept\"], found {found:?}")]
    NonBoolean {
        op: &'static str,
        found: Vec<String>,
    },

    #[error("{op} is not supported over the {semiring} semiring")]
    UnsupportedSemiring {
        op: &'static str,
        semiring: &'static str,
    },

    /// A construction would materialise more states than allowed.
    #[error("state bound exceeded in {what}: limit is {limit}")]
    StateBound { what: String, limit: usize },

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),

    #[error("output sets differ: {0:?} vs {1:?}")]
    OutputMismatch(Vec<String>, Vec<String>),

    #[error("partition is not a congruence: states {left} and {right} {reason}")]
    NotCongruence {
        left: usize,
        right: usize,
        reason: String,
    },

    #[error("invalid automaton: {0}")]
    Invalid(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("parse error: {0}")]
    Syntax(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn dims(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            found,
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
