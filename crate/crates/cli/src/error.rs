use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid scenario at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Core(#[from] vortexlab_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn schema<T>(path: impl Into<String>, message: impl Into<String>) -> CliResult<T> {
    Err(CliError::Schema { path: path.into(), message: message.into() })
}

pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
