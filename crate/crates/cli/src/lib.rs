//! Library half of the `origami` command-line tool.

pub mod commands;
pub mod config;
pub mod decimal;
pub mod expr;
pub mod record;

use thiserror::Error;

pub use commands::{execute, Output, Status};
pub use config::{Args, Format, JobConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Slopes(String),
    #[error("cannot parse value: {0}")]
    Expr(#[from] expr::ExprError),
    #[error("config: {0}")]
    Config(String),
    #[error("record: {0}")]
    Record(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNKNOWN: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Slopes(_) | CliError::Expr(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Record(_) | CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => EXIT_RUNTIME,
        }
    }
}
