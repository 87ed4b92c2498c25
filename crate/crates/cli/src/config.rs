//! Run configuration, loadable from TOML and echoed into every report.

use std::collections::BTreeMap;
use std::path::Path;

use euroliq_core::kernel::BandwidthPolicy;
use euroliq_core::model::{NoiseSpec, TrendCoefficients};
use euroliq_core::urtests::LagPolicy;
use euroliq_core::MonthStamp;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Settings shared by the data-driven commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Annual proportional cost of holding money (decimal).
    pub phi_annual: f64,
    pub lag_policy: LagPolicy,
    pub bandwidth_policy: BandwidthPolicy,
    /// Month with trend index 0; unset means the first observation.
    pub trend_origin: Option<MonthStamp>,
    pub output_format: OutputFormat,
    /// Free-form description of each input column's source, echoed into reports.
    pub provenance: BTreeMap<String, String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            phi_annual: 0.01,
            lag_policy: LagPolicy::default(),
            bandwidth_policy: BandwidthPolicy::NeweyWest,
            trend_origin: None,
            output_format: OutputFormat::Json,
            provenance: BTreeMap::new(),
        }
    }
}

impl PipelineConfig {
    /// Fills data-dependent defaults so the echoed config fully specifies the run.
    pub fn resolved(&self, first_obs: MonthStamp) -> Self {
        Self {
            trend_origin: Some(self.trend_origin.unwrap_or(first_obs)),
            ..self.clone()
        }
    }
}

/// Settings of the `simulate` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub n_obs: usize,
    pub seed: u64,
    pub start: MonthStamp,
    pub coefficients: TrendCoefficients,
    pub noise: NoiseSpec,
    /// Constant euro-area money-market rate written to the dataset, percent per annum.
    pub i_eur_pct: f64,
    /// Constant domestic money stock written to the dataset, lei.
    pub m_dom: f64,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            n_obs: 171,
            seed: 1,
            start: MonthStamp::new(2001, 9).expect("valid month"),
            coefficients: TrendCoefficients::ROMANIA_2001_2015,
            noise: NoiseSpec::default(),
            i_eur_pct: 3.0,
            m_dom: 1.0e10,
        }
    }
}

/// Settings of the `montecarlo` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub n_seeds: usize,
    pub n_obs: usize,
    pub seed_base: u64,
    pub coefficients: TrendCoefficients,
    pub noise: NoiseSpec,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        Self {
            n_seeds: 200,
            n_obs: 171,
            seed_base: 0,
            coefficients: TrendCoefficients::ROMANIA_2001_2015,
            noise: NoiseSpec::default(),
        }
    }
}

/// Contents of a `--config` file: pipeline keys at top level plus optional
/// `[simulate]` and `[montecarlo]` tables.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ConfigFile {
    #[serde(flatten)]
    pub pipeline: PipelineConfig,
    pub simulate: SimulateConfig,
    pub montecarlo: MonteCarloConfig,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}
