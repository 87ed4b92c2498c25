//! Hansen (1992) Lc test of parameter stability in a cointegrating regression.
//!
//! With fully modified residuals `û⁺_t`, scores
//! `s_t = z_t û⁺_t - [0, …, 0, Δ⁺_21]'` and their partial sums `S_t`,
//!
//! ```text
//! Lc = T^{-1} Σ_t S_t' (Z'Z)^{-1} S_t / ω_{1.2}
//! ```
//!
//! Large values indicate instability, i.e. evidence against cointegration.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::lc_table;
use super::TrendOrder;
use crate::error::{Error, Result};
use crate::linalg::gram_inverse;

const MIN_LC_OBS: usize = 30;

/// Ingredients of the Lc statistic, produced by the fully modified fit.
#[derive(Debug, Clone)]
pub struct LcInputs {
    /// Regressor matrix; the stochastic regressor is the last column.
    pub regressors: DMatrix<f64>,
    /// Residuals of the endogeneity-corrected regressand on the fitted values.
    pub fm_residuals: DVector<f64>,
    /// Serial-correlation correction `Δ⁺_21` per observation.
    pub bias: f64,
    pub omega_1_2: f64,
    pub trend: TrendOrder,
    /// Aligned sample length before differencing.
    pub n_obs: usize,
}

impl LcInputs {
    /// Per-observation scores, one row per observation.
    pub fn scores(&self) -> DMatrix<f64> {
        let z = &self.regressors;
        let p = z.ncols();
        let mut s = DMatrix::zeros(z.nrows(), p);
        for r in 0..z.nrows() {
            for c in 0..p {
                s[(r, c)] = z[(r, c)] * self.fm_residuals[r];
            }
            s[(r, p - 1)] -= self.bias;
        }
        s
    }
}

/// Critical values at the 1%, 5% and 10% levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LcCriticalValues {
    #[serde(rename = "1%")]
    pub one: f64,
    #[serde(rename = "5%")]
    pub five: f64,
    #[serde(rename = "10%")]
    pub ten: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HansenLc {
    pub statistic: f64,
    /// Bracket `[lo, hi]` containing the asymptotic p-value.
    pub p_value_range: [f64; 2],
    pub critical_values: LcCriticalValues,
    /// Stability (cointegration) rejected at the 10% level.
    pub reject_at_10: bool,
    pub trend: TrendOrder,
}

pub fn hansen_lc(inputs: &LcInputs) -> Result<HansenLc> {
    if inputs.n_obs < MIN_LC_OBS {
        return Err(Error::InsufficientData {
            needed: MIN_LC_OBS,
            got: inputs.n_obs,
        });
    }
    if !(inputs.omega_1_2 > 0.0) {
        return Err(Error::DegenerateRegression(
            "conditional long-run variance is not positive".into(),
        ));
    }
    let m_inv = gram_inverse(&inputs.regressors)?;
    let scores = inputs.scores();
    let t = scores.nrows();
    let mut cum = DVector::zeros(scores.ncols());
    let mut acc = 0.0;
    for r in 0..t {
        cum += scores.row(r).transpose();
        acc += (cum.transpose() * &m_inv * &cum)[(0, 0)];
    }
    let statistic = acc / (t as f64 * inputs.omega_1_2);
    let table = lc_table::for_trend(inputs.trend);
    Ok(HansenLc {
        statistic,
        p_value_range: table.p_value_range(statistic),
        critical_values: LcCriticalValues {
            one: table.critical_value(0.01),
            five: table.critical_value(0.05),
            ten: table.critical_value(0.10),
        },
        reject_at_10: statistic > table.critical_value(0.10),
        trend: inputs.trend,
    })
}
