//! Asymptotic null distribution of the Lc statistic for one I(1) regressor.
//!
//! Quantiles were obtained by simulating the statistic on `T = 1000` samples of
//! independent Gaussian random-walk regressors and iid errors (100 000
//! replications per trend order); see the ignored `lc_table_generator` test for
//! the procedure.

use super::TrendOrder;

/// Upper-tail probabilities, decreasing.
pub const LEVELS: [f64; 16] = [
    0.99, 0.975, 0.95, 0.90, 0.80, 0.70, 0.60, 0.50, 0.40, 0.30, 0.20, 0.15, 0.10, 0.05, 0.025,
    0.01,
];

const CONSTANT: [f64; 16] = [
    0.0466, 0.0562, 0.0660, 0.0811, 0.1056, 0.1291, 0.1544, 0.1831, 0.2180, 0.2635, 0.3303, 0.3784,
    0.4496, 0.5787, 0.7155, 0.9083,
];
const LINEAR: [f64; 16] = [
    0.0610, 0.0727, 0.0847, 0.1022, 0.1302, 0.1561, 0.1838, 0.2148, 0.2523, 0.3002, 0.3700, 0.4204,
    0.4934, 0.6247, 0.7680, 0.9649,
];
const QUADRATIC: [f64; 16] = [
    0.0722, 0.0847, 0.0984, 0.1177, 0.1486, 0.1766, 0.2063, 0.2391, 0.2779, 0.3276, 0.3985, 0.4500,
    0.5252, 0.6576, 0.7956, 0.9782,
];

/// Quantile table for one deterministic configuration.
#[derive(Debug, Clone, Copy)]
pub struct LcTable {
    quantiles: &'static [f64; 16],
}

pub fn for_trend(trend: TrendOrder) -> LcTable {
    let quantiles = match trend {
        TrendOrder::Constant => &CONSTANT,
        TrendOrder::Linear => &LINEAR,
        TrendOrder::Quadratic => &QUADRATIC,
    };
    LcTable { quantiles }
}

impl LcTable {
    /// Critical value exceeded with probability `level`; `level` must be tabulated.
    pub fn critical_value(&self, level: f64) -> f64 {
        let k = LEVELS
            .iter()
            .position(|&l| (l - level).abs() < 1e-12)
            .unwrap_or_else(|| panic!("level {level} is not tabulated"));
        self.quantiles[k]
    }

    /// Bracket of tabulated levels containing the p-value of `stat`.
    pub fn p_value_range(&self, stat: f64) -> [f64; 2] {
        let q = self.quantiles;
        if stat < q[0] {
            return [LEVELS[0], 1.0];
        }
        if stat >= q[q.len() - 1] {
            return [0.0, LEVELS[LEVELS.len() - 1]];
        }
        let k = q.iter().rposition(|&c| c <= stat).expect("stat >= q[0]");
        [LEVELS[k + 1], LEVELS[k]]
    }
}
