//! MacKinnon response surfaces for Dickey-Fuller t-statistics with one
//! integrated variable.
//!
//! Finite-sample critical values use the 2010 surfaces
//! `b0 + b1/T + b2/T^2 + b3/T^3`; approximate p-values use the 1994
//! normal-CDF polynomial fits (asymptotic).

use statrs::distribution::{ContinuousCDF, Normal};

use super::{CriticalValues, DeterministicSpec};

/// Rows are the 1%, 5% and 10% levels.
const CV_CONSTANT: [[f64; 4]; 3] = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];

const CV_TREND: [[f64; 4]; 3] = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];

struct PValueSurface {
    max_stat: f64,
    min_stat: f64,
    star: f64,
    small_p: [f64; 3],
    large_p: [f64; 4],
}

const P_CONSTANT: PValueSurface = PValueSurface {
    max_stat: 2.74,
    min_stat: -18.83,
    star: -1.61,
    small_p: [2.1659, 1.4412, 3.8269e-2],
    large_p: [1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2],
};

const P_TREND: PValueSurface = PValueSurface {
    max_stat: 0.7,
    min_stat: -16.18,
    star: -2.89,
    small_p: [3.2512, 1.6047, 4.9588e-2],
    large_p: [2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2],
};

fn surface(row: &[f64; 4], nobs: usize) -> f64 {
    let inv = 1.0 / nobs as f64;
    row[0] + inv * (row[1] + inv * (row[2] + inv * row[3]))
}

/// Finite-sample critical values for a regression with `nobs` observations.
pub fn critical_values(spec: DeterministicSpec, nobs: usize) -> CriticalValues {
    let table = match spec {
        DeterministicSpec::Intercept => &CV_CONSTANT,
        DeterministicSpec::TrendAndIntercept => &CV_TREND,
    };
    CriticalValues {
        one: surface(&table[0], nobs),
        five: surface(&table[1], nobs),
        ten: surface(&table[2], nobs),
    }
}

/// Approximate left-tail p-value of a Dickey-Fuller t-statistic.
pub fn p_value(spec: DeterministicSpec, stat: f64) -> f64 {
    let s = match spec {
        DeterministicSpec::Intercept => &P_CONSTANT,
        DeterministicSpec::TrendAndIntercept => &P_TREND,
    };
    if stat > s.max_stat {
        return 1.0;
    }
    if stat < s.min_stat {
        return 0.0;
    }
    let z = if stat <= s.star {
        s.small_p.iter().rev().fold(0.0, |acc, c| acc * stat + c)
    } else {
        s.large_p.iter().rev().fold(0.0, |acc, c| acc * stat + c)
    };
    Normal::standard().cdf(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymptotic_values() {
        let cv = critical_values(DeterministicSpec::Intercept, usize::MAX);
        assert!((cv.five + 2.86154).abs() < 1e-9);
        let cv = critical_values(DeterministicSpec::TrendAndIntercept, usize::MAX);
        assert!((cv.one + 3.95877).abs() < 1e-9);
    }

    #[test]
    fn small_sample_values_more_negative() {
        for spec in [
            DeterministicSpec::Intercept,
            DeterministicSpec::TrendAndIntercept,
        ] {
            let small = critical_values(spec, 50);
            let big = critical_values(spec, 5000);
            assert!(small.one < big.one && small.five < big.five && small.ten <= big.ten);
            assert!(small.one < small.five && small.five < small.ten);
        }
        // T = 100, constant, 5%: -2.86154 - 0.028903 - 0.0004234 - 0.00004004
        let cv = critical_values(DeterministicSpec::Intercept, 100);
        assert!((cv.five + 2.8909).abs() < 1e-4);
    }

    #[test]
    fn p_values_consistent_with_asymptotic_critical_values() {
        for spec in [
            DeterministicSpec::Intercept,
            DeterministicSpec::TrendAndIntercept,
        ] {
            let cv = critical_values(spec, usize::MAX);
            assert!((p_value(spec, cv.one) - 0.01).abs() < 0.003);
            assert!((p_value(spec, cv.five) - 0.05).abs() < 0.005);
            assert!((p_value(spec, cv.ten) - 0.10).abs() < 0.01);
            assert_eq!(p_value(spec, 5.0), 1.0);
            assert_eq!(p_value(spec, -30.0), 0.0);
        }
    }
}
