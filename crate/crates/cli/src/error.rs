use std::path::PathBuf;

use euroliq_core::{Error as CoreError, MonthStamp};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("input line {line}, field `{field}`: {message}")]
    Ingest {
        line: usize,
        field: String,
        message: String,
    },

    #[error("input is missing column `{0}`")]
    MissingColumn(String),

    #[error("input has a gap: no row for {missing}")]
    Gap { missing: MonthStamp },

    #[error("input has two rows for {0}")]
    DuplicateMonth(MonthStamp),

    #[error("cannot derive series at {date}: {message}")]
    Derivation { date: MonthStamp, message: String },

    #[error("configuration: {0}")]
    Config(String),

    #[error("estimates are outside the model's admissible region: {0}")]
    Inadmissible(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: 2 for invalid input, 3 for numerical degeneracy, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_degenerate() => 3,
            CliError::Inadmissible(_) => 3,
            CliError::Core(_)
            | CliError::Ingest { .. }
            | CliError::MissingColumn(_)
            | CliError::Gap { .. }
            | CliError::DuplicateMonth(_)
            | CliError::Derivation { .. }
            | CliError::Config(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
