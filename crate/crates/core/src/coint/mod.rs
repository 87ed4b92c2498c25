//! Cointegrating regression with one I(1) regressor and polynomial trend:
//! fully modified OLS, the Bartlett long-run covariance it relies on, and the
//! Hansen Lc stability test.

mod fmols;
mod hansen;
pub mod lc_table;
mod lrc;

pub use fmols::{fmols, fmols_fit, FmolsFit, FmolsReport, FmolsSpec};
pub use hansen::{hansen_lc, HansenLc, LcCriticalValues, LcInputs};
pub use lrc::{long_run_cov, Kernel, LongRunCovariance};

use serde::{Deserialize, Serialize};

/// Deterministic terms of the cointegrating regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendOrder {
    /// Constant only.
    Constant,
    /// Constant and linear trend.
    Linear,
    /// Constant, linear and quadratic trend.
    Quadratic,
}

impl TrendOrder {
    pub fn n_terms(self) -> usize {
        match self {
            TrendOrder::Constant => 1,
            TrendOrder::Linear => 2,
            TrendOrder::Quadratic => 3,
        }
    }
}
