use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input; maps to exit code 2.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Engine(#[from] corecalc::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
