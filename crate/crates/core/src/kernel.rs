//! Bartlett-kernel long-run variance machinery shared by the Phillips-Perron
//! test and the fully modified estimator.

use serde::{Deserialize, Serialize};

/// How the kernel truncation lag is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "kind", content = "lags")]
pub enum BandwidthPolicy {
    /// A fixed truncation lag.
    Fixed(usize),
    /// `floor(4 (T/100)^(2/9))`.
    #[default]
    NeweyWest,
    /// Data-dependent AR(1) plug-in rule for the Bartlett kernel.
    Andrews,
}

impl BandwidthPolicy {
    /// Resolves the truncation lag for the columns in `data` (all of equal length).
    pub fn resolve(&self, data: &[&[f64]]) -> usize {
        let t = data.first().map_or(0, |c| c.len());
        let lag = match *self {
            BandwidthPolicy::Fixed(b) => b,
            BandwidthPolicy::NeweyWest => newey_west_bandwidth(t),
            BandwidthPolicy::Andrews => andrews_bandwidth(data),
        };
        lag.min(t.saturating_sub(1))
    }
}

/// Rule-of-thumb truncation lag `floor(4 (T/100)^(2/9))`.
pub fn newey_west_bandwidth(t: usize) -> usize {
    (4.0 * (t as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

/// Andrews (1991) Bartlett bandwidth `1.1447 (alpha T)^(1/3)` with AR(1)
/// approximating models fitted column by column.
pub fn andrews_bandwidth(data: &[&[f64]]) -> usize {
    let t = data.first().map_or(0, |c| c.len());
    if t < 3 {
        return 0;
    }
    let (mut num, mut den) = (0.0, 0.0);
    for col in data {
        let (sxy, sxx) = col
            .windows(2)
            .fold((0.0, 0.0), |(a, b), w| (a + w[1] * w[0], b + w[0] * w[0]));
        if sxx <= 0.0 {
            continue;
        }
        let rho = (sxy / sxx).clamp(-0.97, 0.97);
        let s2 = col
            .windows(2)
            .map(|w| (w[1] - rho * w[0]).powi(2))
            .sum::<f64>()
            / (t - 1) as f64;
        let s4 = s2 * s2;
        num += 4.0 * rho * rho * s4 / ((1.0 - rho).powi(6) * (1.0 + rho).powi(2));
        den += s4 / (1.0 - rho).powi(4);
    }
    if den <= 0.0 {
        return 0;
    }
    let alpha = num / den;
    (1.1447 * (alpha * t as f64).powf(1.0 / 3.0)).floor() as usize
}

/// Bartlett weight for lag `j` under truncation lag `lags`.
pub fn bartlett_weight(j: usize, lags: usize) -> f64 {
    if j > lags {
        0.0
    } else {
        1.0 - j as f64 / (lags as f64 + 1.0)
    }
}

/// Scalar long-run variance `gamma_0 + 2 sum_j w_j gamma_j` of a (mean-zero) residual
/// series, with autocovariances normalised by `T`.
pub fn long_run_variance(u: &[f64], lags: usize) -> f64 {
    let t = u.len() as f64;
    let gamma = |j: usize| u[j..].iter().zip(u).map(|(a, b)| a * b).sum::<f64>() / t;
    let mut lrv = gamma(0);
    for j in 1..=lags.min(u.len().saturating_sub(1)) {
        lrv += 2.0 * bartlett_weight(j, lags) * gamma(j);
    }
    lrv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newey_west_rule_values() {
        assert_eq!(newey_west_bandwidth(100), 4);
        assert_eq!(newey_west_bandwidth(170), 4);
        assert_eq!(newey_west_bandwidth(300), 5);
        // 4 * 200^(2/9) = 12.98
        assert_eq!(newey_west_bandwidth(20_000), 12);
    }

    #[test]
    fn bartlett_weights() {
        assert_eq!(bartlett_weight(0, 4), 1.0);
        assert!((bartlett_weight(1, 4) - 0.8).abs() < 1e-15);
        assert_eq!(bartlett_weight(5, 4), 0.0);
    }

    #[test]
    fn zero_lag_is_second_moment() {
        let u = [1.0, -2.0, 0.5, 0.5];
        assert!((long_run_variance(&u, 0) - 5.5 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn lag_capped_by_sample() {
        let u = [1.0, 2.0, 3.0];
        assert_eq!(BandwidthPolicy::Fixed(50).resolve(&[&u]), 2);
    }

    #[test]
    fn andrews_grows_with_persistence() {
        let mut state = 0.0;
        let white: Vec<f64> = (0..500).map(|i| ((i * 7919) % 13) as f64 - 6.0).collect();
        let ar: Vec<f64> = white
            .iter()
            .map(|e| {
                state = 0.8 * state + e;
                state
            })
            .collect();
        assert!(andrews_bandwidth(&[&ar]) > andrews_bandwidth(&[&white]));
    }
}
