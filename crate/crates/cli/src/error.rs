use std::io;
use std::path::PathBuf;

use crate::spec::SpecError;

/// Exit status for malformed input: bad flags, specs or parameter values.
pub const EXIT_USAGE: i32 = 64;
/// Exit status when a distribution lacks what the command needs.
pub const EXIT_CAPABILITY: i32 = 65;
/// Exit status for file-system failures.
pub const EXIT_IO: i32 = 74;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid distribution spec:\n{0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Core(#[from] oddsmo_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot write output: {0}")]
    Stream(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(oddsmo_core::Error::Capability(_)) => EXIT_CAPABILITY,
            CliError::Usage(_) | CliError::Spec(_) | CliError::Core(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Stream(_) => EXIT_IO,
        }
    }
}
