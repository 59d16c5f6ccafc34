use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {message}")]
    ConfigInvalid { field: String, message: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Core(#[from] xcorr_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::ConfigInvalid { field: field.into(), message: message.into() }
    }

    /// 2 for bad configuration, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::ConfigInvalid { .. } => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
