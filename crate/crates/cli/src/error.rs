use std::fmt;

/// Errors surfaced to the command line; all map to a nonzero exit status.
#[derive(Debug)]
pub enum CliError {
    Io(std::io::Error),
    Document(String),
    Precondition(String),
    Unsupported(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "io error: {}", e),
            CliError::Document(m) => write!(f, "invalid document: {}", m),
            CliError::Precondition(m) => write!(f, "precondition failed: {}", m),
            CliError::Unsupported(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<crate::document::ParseError> for CliError {
    fn from(e: crate::document::ParseError) -> Self {
        CliError::Document(e.to_string())
    }
}
