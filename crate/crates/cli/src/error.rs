use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Regular(#[from] chier_regular::Error),
    #[error(transparent)]
    Class(#[from] chier_classes::Error),
    #[error(transparent)]
    Strata(#[from] chier_strata::Error),
    #[error(transparent)]
    Hierarchy(#[from] chier_hierarchy::Error),
    #[error(transparent)]
    Logic(#[from] chier_logic::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("witness failed re-verification: {0}")]
    Unverified(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
