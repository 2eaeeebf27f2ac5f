use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown element name {0:?}")]
    UnknownName(String),

    #[error("cannot combine a {left} element with a {right} element")]
    KindMismatch { left: String, right: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A coefficient violates the solver hypothesis (finite support where
    /// infinite support is required).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("the set is empty")]
    EmptySet,

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    pub(crate) fn kind_mismatch(left: impl Into<String>, right: impl Into<String>) -> Self {
        Error::KindMismatch { left: left.into(), right: right.into() }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidRational(_)
            | Error::InvalidElement(_)
            | Error::Parse { .. }
            | Error::UnknownName(_)
            | Error::KindMismatch { .. }
            | Error::InvalidInput(_)
            | Error::Json(_)
            | Error::Io(_) => 2,
            Error::Precondition(_) | Error::Hypothesis(_) | Error::EmptySet => 3,
            Error::InvariantBreach(_) => 4,
        }
    }
}
