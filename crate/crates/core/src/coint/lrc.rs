use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{bartlett_weight, BandwidthPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    Bartlett,
}

/// Kernel long-run covariance of the stacked process `w_t = (u_t, v_t)`.
///
/// With `Γ_j = T^{-1} Σ_t w_t w_{t-j}'` (demeaned):
///
/// * `omega = Γ_0 + Σ_{j≥1} k_j (Γ_j + Γ_j')`, the two-sided long-run covariance;
/// * `lambda = Σ_{j≥0} k_j Γ_j'`, the one-sided sum including lag zero, so that
///   `lambda[1][0]` accumulates `E[v_t u_{t+j}]`;
/// * `contemporaneous = Γ_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongRunCovariance {
    pub omega: [[f64; 2]; 2],
    pub lambda: [[f64; 2]; 2],
    pub contemporaneous: [[f64; 2]; 2],
    pub bandwidth: usize,
    pub kernel: Kernel,
}

impl LongRunCovariance {
    /// Conditional long-run variance `ω11 - ω12²/ω22`.
    pub fn omega_1_2(&self) -> f64 {
        let o = &self.omega;
        o[0][0] - o[0][1] * o[1][0] / o[1][1]
    }

    /// Smallest eigenvalue of `omega`.
    pub fn min_eigenvalue(&self) -> f64 {
        let o = &self.omega;
        let half_tr = 0.5 * (o[0][0] + o[1][1]);
        let det = o[0][0] * o[1][1] - o[0][1] * o[1][0];
        half_tr - (half_tr * half_tr - det).max(0.0).sqrt()
    }
}

pub(crate) const MIN_LRC_OBS: usize = 10;

/// Bartlett long-run covariance of the residual series `u` and the regressor
/// innovations `v`.
pub fn long_run_cov(u: &[f64], v: &[f64], policy: BandwidthPolicy) -> Result<LongRunCovariance> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    if u.len() < MIN_LRC_OBS {
        return Err(Error::InsufficientData {
            needed: MIN_LRC_OBS,
            got: u.len(),
        });
    }
    let demean = |x: &[f64]| {
        let m = x.iter().sum::<f64>() / x.len() as f64;
        x.iter().map(|a| a - m).collect::<Vec<_>>()
    };
    let (u, v) = (demean(u), demean(v));
    let bandwidth = policy.resolve(&[&u, &v]);
    let w = [&u, &v];
    let t = u.len();

    let gamma = |j: usize| {
        let mut g = [[0.0; 2]; 2];
        for (a, row) in g.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = (j..t).map(|s| w[a][s] * w[b][s - j]).sum::<f64>() / t as f64;
            }
        }
        g
    };

    let g0 = gamma(0);
    let mut omega = g0;
    let mut lambda = transpose(g0);
    for j in 1..=bandwidth {
        let k = bartlett_weight(j, bandwidth);
        let gj = gamma(j);
        let gjt = transpose(gj);
        for a in 0..2 {
            for b in 0..2 {
                omega[a][b] += k * (gj[a][b] + gjt[a][b]);
                lambda[a][b] += k * gjt[a][b];
            }
        }
    }
    Ok(LongRunCovariance {
        omega,
        lambda,
        contemporaneous: g0,
        bandwidth,
        kernel: Kernel::Bartlett,
    })
}

fn transpose(m: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}
