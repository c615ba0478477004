//! Library side of the `qhopf` command-line tool: file format, reports and
//! the command implementations, so integration tests can drive them
//! without spawning processes.

pub mod commands;
pub mod corpus_files;
pub mod format;
pub mod report;

use std::path::Path;

use thiserror::Error;

/// Exit code for a run where every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a mathematical violation, including failed preconditions.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit code for I/O and schema errors.
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Schema(String),
    #[error(transparent)]
    Math(#[from] quasihopf::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        CliError::Schema(msg.into())
    }

    /// Failed verifications, preconditions and singular structures are
    /// violations; everything else means the input could not be read.
    pub fn exit_code(&self) -> i32 {
        use quasihopf::Error as E;
        match self {
            CliError::Math(E::Verification { .. } | E::Precondition(_) | E::NotInvertible) => EXIT_VIOLATION,
            _ => EXIT_MALFORMED,
        }
    }
}
