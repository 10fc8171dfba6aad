use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("{0}")]
    Core(#[from] qdvol_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialize(String),

    #[error("selftest failed: {0}")]
    Selftest(String),
}

impl CliError {
    /// Exit status: 2 for malformed requests, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidRequest(_) => 2,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
