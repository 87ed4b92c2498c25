use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::hansen::{hansen_lc, HansenLc, LcInputs};
use super::lrc::{long_run_cov, LongRunCovariance};
use super::TrendOrder;
use crate::error::{Error, Result};
use crate::kernel::BandwidthPolicy;
use crate::linalg::{gram_inverse, ols};
use crate::model::TrendCoefficients;
use crate::series::{MonthStamp, MonthlySeries};

pub(crate) const MIN_FMOLS_OBS: usize = 30;

/// Relative size of the conditional long-run variance below which inference is
/// reported as degenerate.
const DEGENERATE_REL: f64 = 1e-20;

/// Estimation settings for [`fmols`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FmolsSpec {
    pub trend: TrendOrder,
    pub bandwidth: BandwidthPolicy,
    /// Month at which the trend index is zero; `None` uses the first observation.
    pub trend_origin: Option<MonthStamp>,
}

impl Default for FmolsSpec {
    fn default() -> Self {
        Self {
            trend: TrendOrder::Quadratic,
            bandwidth: BandwidthPolicy::NeweyWest,
            trend_origin: None,
        }
    }
}

/// Fully modified least-squares estimates of
/// `y_t = v0 + v1 t + v2 t^2 + σ x_t + u_t`.
///
/// Coefficient arrays are ordered `[v0, v1, v2, σ]`; trend terms excluded by the
/// chosen [`TrendOrder`] are reported as zero with zero standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FmolsReport {
    pub coefficients: TrendCoefficients,
    pub standard_errors: [f64; 4],
    /// `None` when inference is degenerate.
    pub t_statistics: Option<[f64; 4]>,
    /// Two-sided Student-t p-values of the nullity tests.
    pub p_values: Option<[f64; 4]>,
    /// Fit of the fully modified coefficients to the unmodified regressand.
    pub r_squared: f64,
    pub lrc: LongRunCovariance,
    pub lc: Option<HansenLc>,
    /// Length of the aligned input sample.
    pub n_obs: usize,
    /// Observations entering the regression (the first is used up by `Δx`).
    pub effective_obs: usize,
    pub trend: TrendOrder,
    pub trend_origin: MonthStamp,
    /// First-stage least-squares coefficients on the same sample.
    pub first_stage: [f64; 4],
    /// Set when the residual long-run variance vanishes (exact fit).
    pub degenerate: bool,
}

/// Full output of the estimator, including the score inputs for the Lc test.
#[derive(Debug, Clone)]
pub struct FmolsFit {
    pub report: FmolsReport,
    pub lc_inputs: LcInputs,
}

/// Phillips-Hansen fully modified OLS with a single I(1) regressor.
pub fn fmols(y: &MonthlySeries, x: &MonthlySeries, spec: &FmolsSpec) -> Result<FmolsReport> {
    fmols_fit(y, x, spec).map(|f| f.report)
}

/// As [`fmols`], also returning the inputs of the stability test.
pub fn fmols_fit(y: &MonthlySeries, x: &MonthlySeries, spec: &FmolsSpec) -> Result<FmolsFit> {
    if y.start() != x.start() || y.len() != x.len() {
        return Err(Error::Alignment(format!(
            "regressand {}+{} and regressor {}+{} must be aligned",
            y.start(),
            y.len(),
            x.start(),
            x.len()
        )));
    }
    let n = y.len();
    if n < MIN_FMOLS_OBS {
        return Err(Error::InsufficientData {
            needed: MIN_FMOLS_OBS,
            got: n,
        });
    }
    let origin = spec.trend_origin.unwrap_or(y.start());
    let offset = origin.months_until(&y.start()) as f64;
    let (yv, xv) = (y.values(), x.values());

    // The first observation is consumed by the regressor difference.
    let t_obs = n - 1;
    let n_det = spec.trend.n_terms();
    let p = n_det + 1;
    let z = DMatrix::from_fn(t_obs, p, |r, c| {
        let k = r + 1;
        if c < n_det {
            (k as f64 + offset).powi(c as i32)
        } else {
            xv[k]
        }
    });
    let y_vec = DVector::from_iterator(t_obs, yv[1..].iter().copied());
    let dx: Vec<f64> = xv.windows(2).map(|w| w[1] - w[0]).collect();

    let first = ols(&z, &y_vec)?;
    let lrc = long_run_cov(first.residuals.as_slice(), &dx, spec.bandwidth)?;
    let [[w11, w12], [_, w22]] = lrc.omega;
    if w22 <= 0.0 {
        return Err(Error::DegenerateRegression(
            "regressor innovations have zero long-run variance".into(),
        ));
    }

    let ratio = w12 / w22;
    let y_plus =
        DVector::from_iterator(t_obs, y_vec.iter().zip(&dx).map(|(yk, vk)| yk - ratio * vk));
    // One-sided serial-correlation correction for the stochastic regressor.
    let bias = lrc.lambda[1][0] - lrc.lambda[1][1] * lrc.omega[1][0] / w22;
    let mut moment = z.transpose() * &y_plus;
    moment[p - 1] -= t_obs as f64 * bias;
    let ztz_inv = gram_inverse(&z)?;
    let beta = &ztz_inv * moment;

    let fitted = &z * &beta;
    let ssr: f64 = (&y_vec - &fitted).norm_squared();
    let y_mean = y_vec.mean();
    let sst: f64 = y_vec.iter().map(|v| (v - y_mean).powi(2)).sum();
    let r_squared = if sst > 0.0 {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    } else {
        0.0
    };

    let omega_12 = w11 - w12 * ratio;
    let scale = sst / t_obs as f64;
    let degenerate = !(omega_12 > DEGENERATE_REL * scale.max(f64::MIN_POSITIVE));

    let expand = |v: &DVector<f64>| {
        let mut out = [0.0; 4];
        for c in 0..n_det {
            out[c] = v[c];
        }
        out[3] = v[p - 1];
        out
    };
    let coef = expand(&beta);
    let coefficients = TrendCoefficients {
        v0: coef[0],
        v1: coef[1],
        v2: coef[2],
        sigma: coef[3],
    };

    let y_plus_resid = &y_plus - &fitted;
    let lc_inputs = LcInputs {
        regressors: z,
        fm_residuals: y_plus_resid,
        bias,
        omega_1_2: omega_12,
        trend: spec.trend,
        n_obs: n,
    };

    let (standard_errors, t_statistics, p_values, lc) = if degenerate {
        ([0.0; 4], None, None, None)
    } else {
        let se_vec = DVector::from_fn(p, |k, _| (omega_12 * ztz_inv[(k, k)]).sqrt());
        let se = expand(&se_vec);
        let mut t = [0.0; 4];
        let mut pv = [1.0; 4];
        let dist = StudentsT::new(0.0, 1.0, (t_obs - p) as f64)
            .map_err(|e| Error::Parameter(e.to_string()))?;
        for k in 0..4 {
            if se[k] > 0.0 {
                t[k] = coef[k] / se[k];
                pv[k] = 2.0 * dist.sf(t[k].abs());
            }
        }
        (se, Some(t), Some(pv), Some(hansen_lc(&lc_inputs)?))
    };

    let report = FmolsReport {
        coefficients,
        standard_errors,
        t_statistics,
        p_values,
        r_squared,
        lrc,
        lc,
        n_obs: n,
        effective_obs: t_obs,
        trend: spec.trend,
        trend_origin: origin,
        first_stage: expand(&first.coef),
        degenerate,
    };
    Ok(FmolsFit { report, lc_inputs })
}
