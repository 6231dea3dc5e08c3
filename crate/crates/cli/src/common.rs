//! Flag types and error-to-exit-code mapping shared by the subcommands.

use clap::ValueEnum;
use passfft::{BackendChoice, Direction, Error};

/// Command failure carrying the process exit code.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn io(context: &str, err: std::io::Error) -> Self {
        CliError {
            code: 1,
            message: format!("{context}: {err}"),
        }
    }

    /// Engine errors: backend startup is an environment failure, everything
    /// else is a data/size problem.
    pub fn engine(err: Error) -> Self {
        let code = match err {
            Error::BackendInit(_) => 1,
            Error::BadBackendSpec(_) => 2,
            _ => 3,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn bound(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Single,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Inverse,
}

impl From<DirectionArg> for Direction {
    fn from(arg: DirectionArg) -> Direction {
        match arg {
            DirectionArg::Forward => Direction::Forward,
            DirectionArg::Inverse => Direction::Inverse,
        }
    }
}

/// Clap value parser for `serial | parallel[:k]`.
pub fn parse_backend(spec: &str) -> Result<BackendChoice, String> {
    spec.parse::<BackendChoice>().map_err(|e| e.to_string())
}

/// Canonical token for a backend choice, echoed into benchmark CSV.
pub fn backend_token(choice: BackendChoice) -> String {
    match choice {
        BackendChoice::Serial => "serial".to_string(),
        BackendChoice::Parallel { workers: None } => "parallel".to_string(),
        BackendChoice::Parallel { workers: Some(k) } => format!("parallel:{k}"),
    }
}
