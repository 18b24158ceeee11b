use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Malformed input such as a non-square or non-finite matrix.
    #[error("structural error: {0}")]
    Structural(String),
    /// A parameter outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An input violating a documented precondition.
    #[error("precondition error: {0}")]
    Precondition(String),
    /// A request exceeding a size guard.
    #[error("resource error: {0}")]
    Resource(String),
    /// A contract violation by a caller-provided function or value.
    #[error("contract error: {0}")]
    Contract(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::Parameter(_) => "parameter",
            Error::Precondition(_) => "precondition",
            Error::Resource(_) => "resource",
            Error::Contract(_) => "contract",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
