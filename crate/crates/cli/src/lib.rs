//! Batch pipeline over monthly money and interest-rate data: ingestion,
//! derived series, unit-root tests, cointegration estimates, share paths and
//! Monte Carlo checks, with JSON and CSV reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod montecarlo;
pub mod output;
pub mod pipeline;
pub mod simulate;

pub use error::{CliError, Result};
