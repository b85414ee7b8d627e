use std::path::PathBuf;

use fracairy_core::Error as CoreError;

/// Exit status for a run that completed and whose checks all passed.
pub const EXIT_OK: i32 = 0;
/// At least one verification check failed.
pub const EXIT_CHECKS_FAILED: i32 = 1;
/// The configuration was rejected.
pub const EXIT_CONFIG: i32 = 2;
/// A numerical method gave up.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {message}", path.display())]
    Csv { path: PathBuf, message: String },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn csv(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Self::Csv { path: path.into(), message: message.into() }
    }

    /// The reader of our output went away, as with `fracairy solve | head`.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, Self::Io { source, .. } if source.kind() == std::io::ErrorKind::BrokenPipe)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(e) if is_numerical(e) => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

/// Failures of a method on valid input, as opposed to rejected input.
pub fn is_numerical(e: &CoreError) -> bool {
    !matches!(
        e,
        CoreError::OrderOutOfRange(_)
            | CoreError::InvalidParameter(_)
            | CoreError::Domain(_)
            | CoreError::IncompatibleData(_)
            | CoreError::Unsupported(_)
    )
}

pub type Result<T> = std::result::Result<T, CliError>;
