//! Unit-root tests: augmented Dickey-Fuller and Phillips-Perron.
//!
//! Both tests work with the regression
//!
//! ```text
//! Δy_t = α [+ β t] + ρ y_{t-1} [+ Σ_j φ_j Δy_{t-j}] + e_t
//! ```
//!
//! and report a t-ratio on `ρ` compared against MacKinnon critical values.
//! The null hypothesis is a unit root; rejection is in the left tail.

mod adf;
pub mod mackinnon;
mod pp;

pub use adf::adf_test;
pub use pp::pp_test;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{ols, LeastSquares};

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeterministicSpec {
    Intercept,
    TrendAndIntercept,
}

impl DeterministicSpec {
    fn n_terms(self) -> usize {
        match self {
            DeterministicSpec::Intercept => 1,
            DeterministicSpec::TrendAndIntercept => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    Adf,
    Pp,
}

/// Number of lagged differences in the ADF regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "lags")]
pub enum LagPolicy {
    Fixed(usize),
    /// Minimum AIC over `0..=max` lags on a common sample.
    Aic(usize),
}

impl Default for LagPolicy {
    fn default() -> Self {
        LagPolicy::Aic(12)
    }
}

impl LagPolicy {
    pub fn max_lags(&self) -> usize {
        match *self {
            LagPolicy::Fixed(k) | LagPolicy::Aic(k) => k,
        }
    }
}

/// Critical values at the 1%, 5% and 10% levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    #[serde(rename = "1%")]
    pub one: f64,
    #[serde(rename = "5%")]
    pub five: f64,
    #[serde(rename = "10%")]
    pub ten: f64,
}

/// Rejection decisions at the 1%, 5% and 10% levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejections {
    #[serde(rename = "1%")]
    pub one: bool,
    #[serde(rename = "5%")]
    pub five: bool,
    #[serde(rename = "10%")]
    pub ten: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRootReport {
    pub test: TestKind,
    pub spec: DeterministicSpec,
    pub statistic: f64,
    /// Lagged differences (ADF) or kernel truncation lag (PP).
    pub lags_or_bandwidth: usize,
    /// Observations in the test regression.
    pub nobs: usize,
    pub critical_values: CriticalValues,
    pub approx_p_value: f64,
    pub reject_at: Rejections,
}

impl UnitRootReport {
    fn new(
        test: TestKind,
        spec: DeterministicSpec,
        statistic: f64,
        lags_or_bandwidth: usize,
        nobs: usize,
    ) -> Self {
        let cv = mackinnon::critical_values(spec, nobs);
        let reject_at = Rejections {
            one: statistic < cv.one,
            five: statistic < cv.five,
            ten: statistic < cv.ten,
        };
        let report = Self {
            test,
            spec,
            statistic,
            lags_or_bandwidth,
            nobs,
            critical_values: cv,
            approx_p_value: mackinnon::p_value(spec, statistic),
            reject_at,
        };
        debug_assert!(report.is_consistent());
        report
    }

    /// Checks that critical values are ordered and decisions match the statistic.
    pub fn is_consistent(&self) -> bool {
        let cv = &self.critical_values;
        cv.one < cv.five
            && cv.five < cv.ten
            && self.reject_at.one == (self.statistic < cv.one)
            && self.reject_at.five == (self.statistic < cv.five)
            && self.reject_at.ten == (self.statistic < cv.ten)
            && (0.0..=1.0).contains(&self.approx_p_value)
    }
}

/// Fitted Dickey-Fuller regression; the coefficient on `y_{t-1}` is column 0.
pub(crate) struct DfRegression {
    pub fit: LeastSquares,
}

impl DfRegression {
    pub fn t_ratio(&self) -> f64 {
        self.fit.coef[0] / self.fit.std_err(0)
    }
}

/// Regresses `Δy_t` on `y_{t-1}`, deterministics and `lags` lagged differences,
/// using differences from index `first` onward (`first >= lags`).
pub(crate) fn df_regression(
    y: &[f64],
    spec: DeterministicSpec,
    lags: usize,
    first: usize,
) -> Result<DfRegression> {
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let rows = dy.len().saturating_sub(first);
    let cols = 1 + spec.n_terms() + lags;
    let x = DMatrix::from_fn(rows, cols, |r, c| {
        let j = first + r;
        match c {
            0 => y[j],
            1 => 1.0,
            2 if spec == DeterministicSpec::TrendAndIntercept => (j + 1) as f64,
            _ => {
                let lag = c - spec.n_terms();
                dy[j - lag]
            }
        }
    });
    let target = DVector::from_iterator(rows, dy[first..].iter().copied());
    let fit = ols(&x, &target)?;
    if fit.ssr <= 0.0 {
        return Err(crate::Error::DegenerateRegression(
            "test regression fits exactly".into(),
        ));
    }
    Ok(DfRegression { fit })
}
