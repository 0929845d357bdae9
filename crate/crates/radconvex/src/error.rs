use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const VIOLATION: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NUMERIC: u8 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Spec text that failed to parse, kept for the caret diagnostic.
    Spec { text: String, error: radconvex_core::Error },
    Core(radconvex_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => exit::NUMERIC,
            CliError::Io(_) => exit::NUMERIC,
            _ => exit::USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Spec { text, error: radconvex_core::Error::Parse(pe) } => {
                write!(f, "{}\n  {text}\n  {:>width$}", pe.message, "^", width = pe.position + 1)
            }
            CliError::Spec { error, .. } => write!(f, "{error}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<radconvex_core::Error> for CliError {
    fn from(e: radconvex_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
