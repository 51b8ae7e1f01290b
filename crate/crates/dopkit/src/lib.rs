//! Command-line driver, JSON formats and batch checks on top of `dopkit-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod format;
pub mod manifest;

use std::fmt;
use std::io::{self, Read, Write};
use std::path::Path;

pub use commands::{run, Outcome};
pub use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments.
    Usage(String),
    Io {
        path: String,
        source: io::Error,
    },
    /// A file that does not parse or does not describe a valid object.
    Format {
        path: String,
        message: String,
    },
    /// The computation itself failed.
    Math(String),
}

impl CliError {
    /// Process exit status: 1 for mathematical failures, 2 for everything
    /// the user can fix by changing the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }

    pub fn format(path: &str, message: impl fmt::Display) -> Self {
        CliError::Format {
            path: path.to_string(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Format { path, message } => write!(f, "{path}: {message}"),
            CliError::Math(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(io_err)
    }
}

/// Writes to a file, or standard output for `-`.
pub fn write_output(path: &str, text: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io_err)
    } else {
        std::fs::write(path, text).map_err(io_err)
    }
}
