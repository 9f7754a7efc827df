use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size limit exceeded: dimension {requested} is above the cap of {cap}")]
    SizeLimit { requested: usize, cap: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("space mismatch: {0}")]
    Space(String),

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("{0}")]
    Parse(crate::notation::Diagnostic),
}

impl From<crate::notation::Diagnostic> for Error {
    fn from(d: crate::notation::Diagnostic) -> Self {
        Error::Parse(d)
    }
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
