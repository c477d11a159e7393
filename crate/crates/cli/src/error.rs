use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input, malformed JSON, unknown fields, bad flags.
    #[error("parse error: {0}")]
    Parse(String),
    /// Input that parses but does not describe a valid configuration.
    #[error("invalid configuration: {0}")]
    Validation(String),
    /// Requested verification ran and found a disagreement.
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}
