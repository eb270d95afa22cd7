use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] aoi_core::Error),

    #[error("cannot read config file {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("invalid config file: {0}")]
    ConfigParse(#[from] serde_json::Error),

    #[error("cannot write output {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        use aoi_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::ConfigParse(_) => EXIT_USAGE,
            CliError::Model(E::InvalidParameter { .. } | E::InvalidConfig(_)) => EXIT_USAGE,
            CliError::Model(
                E::NonConvergence { .. } | E::Singular { .. } | E::VerificationFailed { .. },
            ) => EXIT_NUMERIC,
            CliError::ConfigRead { .. } | CliError::Write { .. } => EXIT_IO,
        }
    }
}
