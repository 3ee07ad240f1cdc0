use thiserror::Error;

/// Failures surfaced by the CLI, each mapped to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit 1: a check ran and did not pass.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Exit 2: well-formed input that does not fit the request.
    #[error("{0}")]
    Semantic(String),
    /// Exit 3: input that could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// Exit 4: a dense oracle would exceed the configured cap.
    #[error("{0}")]
    ResourceLimit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Semantic(_) => 2,
            CliError::Parse(_) => 3,
            CliError::ResourceLimit(_) => 4,
        }
    }
}

impl From<abelianfft_core::Error> for CliError {
    fn from(e: abelianfft_core::Error) -> Self {
        match e {
            abelianfft_core::Error::ResourceLimit { .. } => CliError::ResourceLimit(e.to_string()),
            other => CliError::Semantic(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
