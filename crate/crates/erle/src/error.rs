use std::io;
use std::path::PathBuf;

use erle_core::bmp::BmpError;
use erle_core::container::ContainerError;
use thiserror::Error;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Ok = 0,
    /// Input missing or unreadable; also "nothing processed" for `report`.
    Input = 1,
    /// Input exists but is not a usable BMP or ERLE file.
    Format = 2,
    /// Output could not be written.
    Write = 3,
    /// Bad command-line arguments.
    Usage = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Bmp {
        path: PathBuf,
        #[source]
        source: BmpError,
    },
    #[error("{path}: {source}")]
    Container {
        path: PathBuf,
        #[source]
        source: ContainerError,
    },
    #[error("{path}: not a BMP or ERLE file")]
    Unrecognized { path: PathBuf },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("no BMP files could be processed in {path}")]
    EmptyCorpus { path: PathBuf },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Read { .. } | CliError::EmptyCorpus { .. } => ExitCode::Input,
            CliError::Bmp { .. } | CliError::Container { .. } | CliError::Unrecognized { .. } => {
                ExitCode::Format
            }
            CliError::Write { .. } => ExitCode::Write,
        }
    }
}
