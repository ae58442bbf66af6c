use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An instance invariant does not hold. `path` names the offending field,
    /// e.g. `bounds[1]` (parts are 1-based) or `weight[3]` (elements are 0-based).
    #[error("invalid instance at {path}: {message}")]
    InvalidInstance { path: String, message: String },

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("unknown mode `{0}` (expected `vertex` or `edge`)")]
    UnknownMode(String),

    /// The coloring does not describe the same element set as the instance.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("instance too large for oracle: {assignments} assignments exceed the cap of {cap}")]
    TooLarge { assignments: u128, cap: u128 },

    /// A solver was called on an instance outside its domain.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A dynamic program outgrew its table budget.
    #[error("dynamic program exceeded {limit} table entries")]
    TableLimit { limit: usize },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("not a cograph: induced path {}-{}-{}-{}", .0[0], .0[1], .0[2], .0[3])]
    NotACograph([usize; 4]),

    #[error("not a split graph")]
    NotSplit,

    #[error("invalid source problem: {0}")]
    InvalidSource(String),
}

impl Error {
    pub(crate) fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidInstance {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
