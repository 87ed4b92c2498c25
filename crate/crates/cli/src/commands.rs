//! Command implementations. Each returns the full text of its report so that
//! output can be compared byte for byte.

use std::path::Path;

use euroliq_core::kernel::BandwidthPolicy;
use euroliq_core::model::TrendCoefficients;
use euroliq_core::series::span_length;
use euroliq_core::urtests::LagPolicy;
use euroliq_core::MonthStamp;
use serde_json::{json, Value};

use crate::config::{MonteCarloConfig, OutputFormat, PipelineConfig, SimulateConfig};
use crate::error::{CliError, Result};
use crate::ingest::{ingest, Dataset};
use crate::montecarlo::run_montecarlo;
use crate::output::{self, render_json, report_base, to_value};
use crate::pipeline::{delta_path, derive_series, run_estimation, run_unit_roots, IndexingNote};
use crate::simulate::{simulate_dataset, write_rows_csv};

/// Command-line settings that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub phi_annual: Option<f64>,
    pub lags: Option<usize>,
    pub max_lags: Option<usize>,
    pub bandwidth: Option<BandwidthPolicy>,
    pub trend_origin: Option<MonthStamp>,
    pub format: Option<OutputFormat>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut PipelineConfig) -> Result<()> {
        if let Some(phi) = self.phi_annual {
            cfg.phi_annual = phi;
        }
        match (self.lags, self.max_lags) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "--lags and --max-lags are exclusive".into(),
                ))
            }
            (Some(k), None) => cfg.lag_policy = LagPolicy::Fixed(k),
            (None, Some(k)) => cfg.lag_policy = LagPolicy::Aic(k),
            (None, None) => {}
        }
        if let Some(b) = self.bandwidth {
            cfg.bandwidth_policy = b;
        }
        if let Some(o) = self.trend_origin {
            cfg.trend_origin = Some(o);
        }
        if let Some(f) = self.format {
            cfg.output_format = f;
        }
        Ok(())
    }
}

/// `auto` (Newey-West rule), `andrews`, or a fixed number of lags.
pub fn parse_bandwidth(s: &str) -> std::result::Result<BandwidthPolicy, String> {
    match s {
        "auto" | "newey-west" => Ok(BandwidthPolicy::NeweyWest),
        "andrews" => Ok(BandwidthPolicy::Andrews),
        _ => s
            .parse()
            .map(BandwidthPolicy::Fixed)
            .map_err(|_| format!("expected auto, andrews or a lag count, got `{s}`")),
    }
}

/// `v0,v1,v2,sigma`
pub fn parse_coefficients(s: &str) -> std::result::Result<TrendCoefficients, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [v0, v1, v2, sigma] => TrendCoefficients::new(v0, v1, v2, sigma).map_err(|e| e.to_string()),
        _ => Err(format!(
            "expected four comma-separated values, got {}",
            parts.len()
        )),
    }
}

fn dataset_json(d: &Dataset) -> Result<Value> {
    Ok(json!({
        "schema": d.schema,
        "rows": d.rows.len(),
        "first": d.first(),
        "last": d.last(),
        "span_length": span_length(d.first(), d.last())?,
    }))
}

struct Loaded {
    dataset: Dataset,
    config: PipelineConfig,
}

fn load(input: &Path, cfg: &PipelineConfig) -> Result<Loaded> {
    let dataset = ingest(input)?;
    let config = cfg.resolved(dataset.first());
    Ok(Loaded { dataset, config })
}

fn base(command: &str, l: &Loaded) -> Result<serde_json::Map<String, Value>> {
    let mut r = report_base(command, to_value(&l.config)?, Some(&l.dataset.digest));
    output::insert_metadata(&mut r, "dataset", dataset_json(&l.dataset)?);
    Ok(r)
}

pub fn ingest_check(input: &Path, cfg: &PipelineConfig) -> Result<String> {
    let l = load(input, cfg)?;
    derive_series(&l.dataset.rows, &l.config)?;
    match l.config.output_format {
        OutputFormat::Json => render_json(Value::Object(base("ingest-check", &l)?)),
        OutputFormat::Csv => {
            let d = &l.dataset;
            Ok(format!(
                "schema,rows,first,last,span_length,input_digest\n{},{},{},{},{},{}\n",
                match d.schema {
                    crate::ingest::Schema::Split => "split",
                    crate::ingest::Schema::Lei => "lei",
                },
                d.rows.len(),
                d.first(),
                d.last(),
                span_length(d.first(), d.last())?,
                d.digest
            ))
        }
    }
}

pub fn unit_root(input: &Path, cfg: &PipelineConfig) -> Result<String> {
    let l = load(input, cfg)?;
    let derived = derive_series(&l.dataset.rows, &l.config)?;
    let reports = run_unit_roots(&derived, &l.config)?;
    match l.config.output_format {
        OutputFormat::Json => {
            let mut r = base("unit-root", &l)?;
            r.insert("unit_roots".into(), to_value(&reports)?);
            render_json(Value::Object(r))
        }
        OutputFormat::Csv => output::unit_roots_csv(&reports),
    }
}

/// Unit-root grid, cointegrating regression, correlation and share path.
pub fn estimate(input: &Path, cfg: &PipelineConfig) -> Result<String> {
    let l = load(input, cfg)?;
    let derived = derive_series(&l.dataset.rows, &l.config)?;
    let est = run_estimation(&derived, &l.config)?;
    match l.config.output_format {
        OutputFormat::Json => {
            let reports = run_unit_roots(&derived, &l.config)?;
            let mut r = base("estimate", &l)?;
            r.insert("unit_roots".into(), to_value(&reports)?);
            output::estimation_into(&mut r, &est)?;
            render_json(Value::Object(r))
        }
        OutputFormat::Csv => output::estimation_csv(&est),
    }
}

/// Where the share path comes from.
#[derive(Debug, Clone)]
pub enum PathSource<'a> {
    /// Estimate coefficients from a data file.
    Estimated(&'a Path),
    /// Evaluate given coefficients over the months of a data file, or over
    /// `months` months from `start` when no file is given.
    Given {
        coefficients: TrendCoefficients,
        input: Option<&'a Path>,
        start: MonthStamp,
        months: usize,
    },
}

/// Share path as `date,ratio` CSV, or a JSON report when JSON output is requested.
pub fn delta_path_cmd(source: PathSource<'_>, cfg: &PipelineConfig, json: bool) -> Result<String> {
    let (path, report) = match source {
        PathSource::Estimated(input) => {
            let l = load(input, cfg)?;
            let derived = derive_series(&l.dataset.rows, &l.config)?;
            let est = run_estimation(&derived, &l.config)?;
            let mut r = base("delta-path", &l)?;
            output::estimation_into(&mut r, &est)?;
            (est.delta_path, r)
        }
        PathSource::Given {
            coefficients,
            input,
            start,
            months,
        } => {
            let (start, months, digest, resolved, dataset) = match input {
                Some(p) => {
                    let l = load(p, cfg)?;
                    let ds = dataset_json(&l.dataset)?;
                    (
                        l.dataset.first(),
                        l.dataset.rows.len(),
                        Some(l.dataset.digest),
                        l.config,
                        Some(ds),
                    )
                }
                None => (start, months, None, cfg.resolved(start), None),
            };
            let origin = resolved.trend_origin.unwrap_or(start);
            let path = delta_path(start, months, origin, &coefficients)?;
            let mut r = report_base("delta-path", to_value(&resolved)?, digest.as_deref());
            r.insert("coefficients".into(), to_value(&coefficients)?);
            r.insert("delta_path".into(), output::delta_path_json(&path));
            if let Some(ds) = dataset {
                output::insert_metadata(&mut r, "dataset", ds);
            }
            if months > 0 {
                let note = IndexingNote::new(origin, start, &coefficients)?;
                output::insert_metadata(&mut r, "indexing", to_value(&note)?);
            }
            (path, r)
        }
    };
    if json {
        render_json(Value::Object(report))
    } else {
        output::delta_path_csv(&path)
    }
}

/// Simulated data file in the `m_eur_lei` input schema.
pub fn simulate_cmd(sim: &SimulateConfig, cfg: &PipelineConfig) -> Result<String> {
    let (_, rows) = simulate_dataset(sim, cfg)?;
    let mut buf = Vec::new();
    write_rows_csv(&rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn montecarlo_cmd(mc: &MonteCarloConfig, cfg: &PipelineConfig) -> Result<String> {
    let summary = run_montecarlo(mc, cfg)?;
    match cfg.output_format {
        OutputFormat::Json => {
            let mut r = report_base("montecarlo", to_value(cfg)?, None);
            r.insert("montecarlo".into(), to_value(mc)?);
            r.insert("summary".into(), to_value(&summary)?);
            render_json(Value::Object(r))
        }
        OutputFormat::Csv => output::montecarlo_csv(&summary),
    }
}
