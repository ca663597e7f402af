use std::fmt;

/// A failed command and the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// A verification property failed (exit 1).
    Verify(String),
    /// Bad arguments or configuration (exit 2).
    Invalid(String),
    /// Domain or I/O failure while running (exit 3).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub(crate) fn invalid(field: &str, detail: impl fmt::Display) -> Self {
        CliError::Invalid(format!("{field}: {detail}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
