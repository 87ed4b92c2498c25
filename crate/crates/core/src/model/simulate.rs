//! Synthetic data satisfying the cointegrating regression exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::TrendCoefficients;
use crate::error::{param, Error, Result};
use crate::series::{MonthStamp, MonthlySeries};

/// Noise settings of the simulated process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Standard deviation of the random-walk increments of the cost spread.
    pub spread_sd: f64,
    /// AR(1) coefficient of the equilibrium error.
    pub eps_rho: f64,
    /// Innovation standard deviation of the equilibrium error.
    pub eps_sd: f64,
    /// Value of the spread before the first increment.
    #[serde(default)]
    pub spread_start: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            spread_sd: 0.05,
            eps_rho: 0.5,
            eps_sd: 0.05,
            spread_start: 0.0,
        }
    }
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.spread_sd > 0.0 && self.spread_sd.is_finite()) {
            return Err(param(format!(
                "spread_sd must be > 0, got {}",
                self.spread_sd
            )));
        }
        if !(self.eps_sd > 0.0 && self.eps_sd.is_finite()) {
            return Err(param(format!("eps_sd must be > 0, got {}", self.eps_sd)));
        }
        if !(self.eps_rho.abs() < 1.0) {
            return Err(param(format!(
                "|eps_rho| must be < 1, got {}",
                self.eps_rho
            )));
        }
        if !self.spread_start.is_finite() {
            return Err(param("spread_start must be finite"));
        }
        Ok(())
    }

    /// Unconditional standard deviation of the AR(1) equilibrium error.
    pub fn eps_stationary_sd(&self) -> f64 {
        self.eps_sd / (1.0 - self.eps_rho * self.eps_rho).sqrt()
    }
}

/// Output of [`simulate_dgp`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedData {
    /// `ln(S M*/M)`
    pub log_money_ratio: MonthlySeries,
    /// `ln oc - ln oc*`
    pub oc_spread: MonthlySeries,
    /// Equilibrium error path.
    pub eps: MonthlySeries,
}

/// Simulates `y_t = v0 + v1 t + v2 t^2 + σ s_t + ε_t` for `t = 0..n`, where `s_t`
/// is a driftless Gaussian random walk and `ε_t` a stationary Gaussian AR(1).
pub fn simulate_dgp<R: Rng + ?Sized>(
    coeffs: &TrendCoefficients,
    n: usize,
    noise: &NoiseSpec,
    start: MonthStamp,
    rng: &mut R,
) -> Result<SimulatedData> {
    if n < 30 {
        return Err(Error::InsufficientData { needed: 30, got: n });
    }
    coeffs.validate()?;
    noise.validate()?;
    let eta = Normal::new(0.0, noise.spread_sd).map_err(|e| param(e.to_string()))?;
    let nu = Normal::new(0.0, noise.eps_sd).map_err(|e| param(e.to_string()))?;

    let mut spread = Vec::with_capacity(n);
    let mut eps = Vec::with_capacity(n);
    let mut s = noise.spread_start;
    let mut e = nu.sample(rng) / (1.0 - noise.eps_rho * noise.eps_rho).sqrt();
    for k in 0..n {
        if k > 0 {
            s += eta.sample(rng);
            e = noise.eps_rho * e + nu.sample(rng);
        }
        spread.push(s);
        eps.push(e);
    }
    let y = spread
        .iter()
        .zip(&eps)
        .enumerate()
        .map(|(k, (s, e))| coeffs.trend(k as f64) + coeffs.sigma * s + e)
        .collect();

    Ok(SimulatedData {
        log_money_ratio: MonthlySeries::new(start, y)?,
        oc_spread: MonthlySeries::new(start, spread)?,
        eps: MonthlySeries::new(start, eps)?,
    })
}

/// [`simulate_dgp`] driven by a ChaCha8 generator seeded with `seed`.
pub fn simulate_dgp_seeded(
    coeffs: &TrendCoefficients,
    n: usize,
    noise: &NoiseSpec,
    start: MonthStamp,
    seed: u64,
) -> Result<SimulatedData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    simulate_dgp(coeffs, n, noise, start, &mut rng)
}
