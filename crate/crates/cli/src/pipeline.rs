//! Series derivation and the estimation pipeline over ingested rows.

use euroliq_core::coint::{fmols, FmolsReport, FmolsSpec, TrendOrder};
use euroliq_core::model::{
    annual_to_monthly_cost, delta_ratio_at, opportunity_cost, TrendCoefficients,
};
use euroliq_core::series::pearson_correlation;
use euroliq_core::urtests::{adf_test, pp_test, DeterministicSpec, UnitRootReport};
use euroliq_core::{MonthStamp, MonthlySeries};
use serde::Serialize;

use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::ingest::DatasetRow;

/// Monthly decimal equivalent of a rate in percent per annum.
pub fn monthly_rate(annual_pct: f64) -> f64 {
    (1.0 + annual_pct / 100.0).powf(1.0 / 12.0) - 1.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedSeries {
    /// `ln(fx m_eur / m_dom)`
    pub log_money_ratio: MonthlySeries,
    /// `ln oc_dom - ln oc_for`
    pub oc_spread_log: MonthlySeries,
    pub oc_dom: MonthlySeries,
    pub oc_for: MonthlySeries,
}

pub fn derive_series(rows: &[DatasetRow], cfg: &PipelineConfig) -> Result<DerivedSeries> {
    let phi = annual_to_monthly_cost(cfg.phi_annual)?;
    let Some(first) = rows.first() else {
        return Err(CliError::Config("no rows to derive series from".into()));
    };
    let oc = |date: MonthStamp, pct: f64| {
        opportunity_cost(monthly_rate(pct), phi).map_err(|e| CliError::Derivation {
            date,
            message: e.to_string(),
        })
    };
    let mut ratio = Vec::with_capacity(rows.len());
    let mut oc_dom = Vec::with_capacity(rows.len());
    let mut oc_for = Vec::with_capacity(rows.len());
    for r in rows {
        ratio.push((r.euro.in_lei() / r.m_dom).ln());
        oc_dom.push(oc(r.date, r.i_dom)?);
        oc_for.push(oc(r.date, r.i_eur)?);
    }
    let spread = oc_dom
        .iter()
        .zip(&oc_for)
        .map(|(d, f)| d.ln() - f.ln())
        .collect();
    let start = first.date;
    Ok(DerivedSeries {
        log_money_ratio: MonthlySeries::new(start, ratio)?,
        oc_spread_log: MonthlySeries::new(start, spread)?,
        oc_dom: MonthlySeries::new(start, oc_dom)?,
        oc_for: MonthlySeries::new(start, oc_for)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesName {
    LogMoneyRatio,
    OcSpreadLog,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledUnitRoot {
    pub series: SeriesName,
    #[serde(flatten)]
    pub report: UnitRootReport,
}

/// ADF and PP under both deterministic specifications for both series.
pub fn run_unit_roots(d: &DerivedSeries, cfg: &PipelineConfig) -> Result<Vec<LabeledUnitRoot>> {
    let mut out = Vec::with_capacity(8);
    for (name, s) in [
        (SeriesName::LogMoneyRatio, &d.log_money_ratio),
        (SeriesName::OcSpreadLog, &d.oc_spread_log),
    ] {
        for spec in [
            DeterministicSpec::Intercept,
            DeterministicSpec::TrendAndIntercept,
        ] {
            out.push(LabeledUnitRoot {
                series: name,
                report: adf_test(s, spec, cfg.lag_policy)?,
            });
        }
        for spec in [
            DeterministicSpec::Intercept,
            DeterministicSpec::TrendAndIntercept,
        ] {
            out.push(LabeledUnitRoot {
                series: name,
                report: pp_test(s, spec, cfg.bandwidth_policy)?,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaPoint {
    pub date: MonthStamp,
    /// Trend index of `date`.
    pub t: i64,
    /// `(1-δ)/δ`
    pub ratio: f64,
    pub delta: f64,
}

/// Liquidity-degree path over `n` months from `start`, with `ε = 0`.
pub fn delta_path(
    start: MonthStamp,
    n: usize,
    origin: MonthStamp,
    coeffs: &TrendCoefficients,
) -> Result<Vec<DeltaPoint>> {
    coeffs
        .validate()
        .map_err(|e| CliError::Inadmissible(format!("cannot evaluate the share path: {e}")))?;
    (0..n)
        .map(|k| {
            let date = start.add_months(k as i64);
            let t = origin.months_until(&date);
            let ratio = delta_ratio_at(t, coeffs, 0.0)?;
            Ok(DeltaPoint {
                date,
                t,
                ratio,
                delta: 1.0 / (1.0 + ratio),
            })
        })
        .collect()
}

/// The two readings of where the trend index starts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexingNote {
    pub trend_origin: MonthStamp,
    pub first_observation: MonthStamp,
    /// Trend index of the first observation under the configured origin.
    pub t_first: i64,
    pub ratio_first: f64,
    /// Ratio at the first observation had its index been one larger.
    pub ratio_first_if_index_shifted_by_one: f64,
}

impl IndexingNote {
    pub fn new(origin: MonthStamp, first: MonthStamp, coeffs: &TrendCoefficients) -> Result<Self> {
        let t_first = origin.months_until(&first);
        Ok(Self {
            trend_origin: origin,
            first_observation: first,
            t_first,
            ratio_first: delta_ratio_at(t_first, coeffs, 0.0)?,
            ratio_first_if_index_shifted_by_one: delta_ratio_at(t_first + 1, coeffs, 0.0)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationReport {
    pub fmols: FmolsReport,
    pub correlation: f64,
    pub delta_path: Vec<DeltaPoint>,
    pub indexing: IndexingNote,
}

pub fn fmols_spec(cfg: &PipelineConfig) -> FmolsSpec {
    FmolsSpec {
        trend: TrendOrder::Quadratic,
        bandwidth: cfg.bandwidth_policy,
        trend_origin: cfg.trend_origin,
    }
}

/// Quadratic-trend FMOLS of the money ratio on the cost spread, their
/// correlation, and the implied share path.
pub fn run_estimation(d: &DerivedSeries, cfg: &PipelineConfig) -> Result<EstimationReport> {
    let y = &d.log_money_ratio;
    let fm = fmols(y, &d.oc_spread_log, &fmols_spec(cfg))?;
    let correlation = pearson_correlation(y, &d.oc_spread_log)?;
    let coeffs = fm.coefficients;
    let origin = fm.trend_origin;
    let path = delta_path(y.start(), y.len(), origin, &coeffs)?;
    let indexing = IndexingNote::new(origin, y.start(), &coeffs)?;
    Ok(EstimationReport {
        fmols: fm,
        correlation,
        delta_path: path,
        indexing,
    })
}
