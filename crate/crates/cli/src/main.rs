use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use euroliq_cli::commands::{self, Overrides, PathSource};
use euroliq_cli::config::{ConfigFile, OutputFormat};
use euroliq_cli::{CliError, Result};
use euroliq_core::kernel::BandwidthPolicy;
use euroliq_core::model::TrendCoefficients;
use euroliq_core::MonthStamp;

/// Currency-substitution money demand: data checks, unit-root tests,
/// FMOLS estimation, share paths and Monte Carlo validation.
#[derive(Parser)]
#[command(name = "euroliq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Annual holding cost of money, as a decimal.
    #[arg(long)]
    phi_annual: Option<f64>,
    /// Fixed number of lagged differences in the ADF regression.
    #[arg(long)]
    lags: Option<usize>,
    /// Largest lag considered by AIC selection.
    #[arg(long)]
    max_lags: Option<usize>,
    /// Kernel bandwidth: auto, andrews, or a lag count.
    #[arg(long, value_parser = commands::parse_bandwidth)]
    bandwidth: Option<BandwidthPolicy>,
    /// Month with trend index zero (YYYY-MM).
    #[arg(long)]
    trend_origin: Option<MonthStamp>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an input file and summarize it.
    IngestCheck {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// ADF and PP tests for both derived series.
    UnitRoot {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Full report: unit roots, FMOLS with Lc, correlation and share path.
    Estimate {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Liquidity-degree path as `date,ratio` CSV.
    DeltaPath {
        /// Data file; coefficients are estimated from it unless given.
        input: Option<PathBuf>,
        /// Coefficients `v0,v1,v2,sigma` to evaluate instead of estimating.
        #[arg(long, value_parser = commands::parse_coefficients, allow_hyphen_values = true)]
        coefficients: Option<TrendCoefficients>,
        /// Evaluate the published Romanian estimates.
        #[arg(long, conflicts_with = "coefficients")]
        published: bool,
        /// First month when no data file is given.
        #[arg(long, default_value = "2001-09")]
        start: MonthStamp,
        /// Number of months when no data file is given.
        #[arg(long, default_value_t = 171)]
        months: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Write a simulated input file.
    Simulate {
        #[arg(long)]
        n_obs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        start: Option<MonthStamp>,
        #[command(flatten)]
        common: Common,
    },
    /// Repeated simulation and estimation under known coefficients.
    Montecarlo {
        #[arg(long)]
        n_seeds: Option<usize>,
        #[arg(long)]
        n_obs: Option<usize>,
        #[arg(long)]
        seed_base: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
}

fn settings(common: &Common) -> Result<ConfigFile> {
    let mut file = match &common.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    Overrides {
        phi_annual: common.phi_annual,
        lags: common.lags,
        max_lags: common.max_lags,
        bandwidth: common.bandwidth,
        trend_origin: common.trend_origin,
        format: common.format.map(Into::into),
    }
    .apply(&mut file.pipeline)?;
    Ok(file)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (text, common) = match &cli.command {
        Command::IngestCheck { input, common } => (
            commands::ingest_check(input, &settings(common)?.pipeline)?,
            common,
        ),
        Command::UnitRoot { input, common } => (
            commands::unit_root(input, &settings(common)?.pipeline)?,
            common,
        ),
        Command::Estimate { input, common } => (
            commands::estimate(input, &settings(common)?.pipeline)?,
            common,
        ),
        Command::DeltaPath {
            input,
            coefficients,
            published,
            start,
            months,
            common,
        } => {
            let s = settings(common)?;
            let given = if *published {
                Some(TrendCoefficients::ROMANIA_2001_2015)
            } else {
                *coefficients
            };
            let source = match (given, input) {
                (Some(c), input) => PathSource::Given {
                    coefficients: c,
                    input: input.as_deref(),
                    start: *start,
                    months: *months,
                },
                (None, Some(p)) => PathSource::Estimated(p),
                (None, None) => {
                    return Err(CliError::Config(
                        "give a data file, --coefficients or --published".into(),
                    ))
                }
            };
            let json = matches!(common.format, Some(Format::Json));
            (commands::delta_path_cmd(source, &s.pipeline, json)?, common)
        }
        Command::Simulate {
            n_obs,
            seed,
            start,
            common,
        } => {
            let s = settings(common)?;
            let mut sim = s.simulate;
            sim.n_obs = n_obs.unwrap_or(sim.n_obs);
            sim.seed = seed.unwrap_or(sim.seed);
            sim.start = start.unwrap_or(sim.start);
            (commands::simulate_cmd(&sim, &s.pipeline)?, common)
        }
        Command::Montecarlo {
            n_seeds,
            n_obs,
            seed_base,
            common,
        } => {
            let s = settings(common)?;
            let mut mc = s.montecarlo;
            mc.n_seeds = n_seeds.unwrap_or(mc.n_seeds);
            mc.n_obs = n_obs.unwrap_or(mc.n_obs);
            mc.seed_base = seed_base.unwrap_or(mc.seed_base);
            (commands::montecarlo_cmd(&mc, &s.pipeline)?, common)
        }
    };
    emit(&text, common.output.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
