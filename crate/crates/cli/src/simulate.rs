//! Synthetic input files built from the simulated process.

use std::io::Write;

use euroliq_core::model::{
    annual_to_monthly_cost, opportunity_cost, simulate_dgp_seeded, SimulatedData,
};

use crate::config::{PipelineConfig, SimulateConfig};
use crate::error::{CliError, Result};
use crate::ingest::{DatasetRow, EuroStock};
use crate::pipeline::monthly_rate;

/// Simulates the process and encodes it as input rows.
pub fn simulate_dataset(
    cfg: &SimulateConfig,
    pipe: &PipelineConfig,
) -> Result<(SimulatedData, Vec<DatasetRow>)> {
    let sim = simulate_dgp_seeded(
        &cfg.coefficients,
        cfg.n_obs,
        &cfg.noise,
        cfg.start,
        cfg.seed,
    )?;
    let rows = rows_from_simulation(&sim, cfg, pipe)?;
    Ok((sim, rows))
}

/// Holds the domestic stock and euro rate fixed, sets the euro stock from the
/// money ratio and backs the domestic rate out of the cost spread.
pub fn rows_from_simulation(
    sim: &SimulatedData,
    cfg: &SimulateConfig,
    pipe: &PipelineConfig,
) -> Result<Vec<DatasetRow>> {
    if !(cfg.m_dom > 0.0 && cfg.m_dom.is_finite()) {
        return Err(CliError::Config(format!(
            "m_dom must be > 0, got {}",
            cfg.m_dom
        )));
    }
    let phi = annual_to_monthly_cost(pipe.phi_annual)?;
    let oc_for = opportunity_cost(monthly_rate(cfg.i_eur_pct), phi)?;
    sim.log_money_ratio
        .iter()
        .zip(sim.oc_spread.values())
        .map(|((date, y), s)| {
            let oc_dom = oc_for * s.exp();
            if oc_dom >= 1.0 {
                return Err(CliError::Derivation {
                    date,
                    message: format!("spread {s} implies an opportunity cost of {oc_dom} >= 1"),
                });
            }
            let i_month = (oc_dom - phi) / (1.0 - oc_dom);
            Ok(DatasetRow {
                date,
                m_dom: cfg.m_dom,
                euro: EuroStock::Lei {
                    m_eur_lei: cfg.m_dom * y.exp(),
                },
                i_dom: ((1.0 + i_month).powi(12) - 1.0) * 100.0,
                i_eur: cfg.i_eur_pct,
            })
        })
        .collect()
}

/// Writes rows in the `m_eur_lei` schema with shortest round-trip float text.
pub fn write_rows_csv(rows: &[DatasetRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["date", "m_dom", "m_eur_lei", "i_dom", "i_eur"])?;
    for r in rows {
        w.write_record([
            r.date.to_string(),
            r.m_dom.to_string(),
            r.euro.in_lei().to_string(),
            r.i_dom.to_string(),
            r.i_eur.to_string(),
        ])?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::ingest_bytes;
    use crate::pipeline::derive_series;

    #[test]
    fn encoded_rows_reproduce_simulated_series() {
        let cfg = SimulateConfig::default();
        let pipe = PipelineConfig::default();
        let (sim, rows) = simulate_dataset(&cfg, &pipe).unwrap();
        let mut buf = Vec::new();
        write_rows_csv(&rows, &mut buf).unwrap();
        let back = ingest_bytes(&buf).unwrap();
        assert_eq!(back.rows, rows);
        let d = derive_series(&back.rows, &pipe).unwrap();
        for (a, b) in d
            .log_money_ratio
            .values()
            .iter()
            .zip(sim.log_money_ratio.values())
        {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in d.oc_spread_log.values().iter().zip(sim.oc_spread.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn too_short_is_a_data_error() {
        let cfg = SimulateConfig {
            n_obs: 10,
            ..SimulateConfig::default()
        };
        let e = simulate_dataset(&cfg, &PipelineConfig::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
