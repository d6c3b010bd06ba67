use std::fmt;
use std::path::PathBuf;

use au_core::document::DocumentError;

/// Failure of a subcommand, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag values (exit 64).
    Usage(String),
    /// A document that is not a valid BPA or belief table (exit 2).
    Document { path: PathBuf, error: DocumentError },
    /// A valid document the requested operation cannot be applied to (exit 2).
    Input(String),
    /// Unreadable input or unwritable output (exit 66).
    File {
        path: PathBuf,
        error: std::io::Error,
    },
    /// A result that fails its own post-condition (exit 70).
    Internal(String),
}

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_CHECK_FAILED: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_NO_INPUT: u8 = 66;
pub const EXIT_INTERNAL: u8 = 70;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Document { .. } | CliError::Input(_) => EXIT_INVALID,
            CliError::File { .. } => EXIT_NO_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Document { path, error } => {
                write!(f, "{} [{}]: {error}", path.display(), error.code())
            }
            CliError::Input(msg) => f.write_str(msg),
            CliError::File { path, error } => write!(f, "{}: {error}", path.display()),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl From<au_core::Error> for CliError {
    fn from(e: au_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
