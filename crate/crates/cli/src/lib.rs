//! IO, file formats, deterministic corpus generation and the command layer
//! for the `superpoint` binary. The mathematics lives in `superpoint-core`.

pub mod commands;
pub mod io;
pub mod random;
pub mod suite;

use serde_json::Value;

/// Command outcome: a JSON value plus the process exit code.
pub struct Output {
    pub value: Value,
    pub code: i32,
}

impl Output {
    pub fn ok(value: Value) -> Self {
        Output { value, code: 0 }
    }
}

/// Errors split by exit code: domain errors exit 1, usage and parse errors
/// exit 2.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn domain(err: impl std::fmt::Display) -> Self {
        CliError::Domain(err.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}
