use thiserror::Error;

/// Exit code when every check passes.
pub const EXIT_PASS: u8 = 0;
/// Exit code for a failed numeric check.
pub const EXIT_FAIL: u8 = 1;
/// Exit code for malformed input or bad usage.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Library errors caused by the user's input.
pub(crate) fn input(e: isocal::Error) -> CliError {
    CliError::Input(e.to_string())
}

/// Library errors raised while checking built-in problems.
pub(crate) fn numeric(e: isocal::Error) -> CliError {
    CliError::Numeric(e.to_string())
}
