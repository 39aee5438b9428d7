use std::fmt;
use std::path::PathBuf;

/// Position of a problem in a structure file, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Why a structure file was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] latlab_core::Error),
}

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{source_name}: {error}")]
    Parse {
        source_name: String,
        error: FormatError,
    },
    #[error(transparent)]
    Core(#[from] latlab_core::Error),
    #[error("unknown campaign `{0}`")]
    UnknownCampaign(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("no such file or generator: `{0}`")]
    NoInput(String),
    #[error("{0}")]
    Usage(String),
}

impl LabError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }
}
