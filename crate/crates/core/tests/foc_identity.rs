//! The two money first-order conditions, solved numerically, reproduce the
//! closed-form relative demand.

use euroliq_core::model::{foc_euro_gap, foc_money_gap, relative_demand_log, ModelParams};
use proptest::prelude::*;

/// Bisection for the root of an increasing function of a log variable.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    while hi - lo > 1e-14 * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Consumption that zeroes the domestic-money condition, given the rest.
fn x_solving_money_foc(m: f64, ms: f64, delta: f64, oc: f64, p: &ModelParams) -> f64 {
    bisect(
        |log_x| foc_money_gap(log_x.exp(), m, ms, delta, oc, p).unwrap(),
        -700.0,
        700.0,
    )
    .exp()
}

/// Euro holdings that zero the euro condition once `x` is re-solved for each trial.
fn solve_ms(m: f64, delta: f64, oc: f64, oc_star: f64, p: &ModelParams) -> f64 {
    // The euro residual falls as ms rises.
    let gap = |log_ms: f64| {
        let ms = log_ms.exp();
        let x = x_solving_money_foc(m, ms, delta, oc, p);
        -foc_euro_gap(x, m, ms, delta, oc_star, p).unwrap()
    };
    // Keep every power of ms representable.
    let gamma = p.gamma().unwrap();
    let width = 100.0 / (gamma.abs() + (1.0 - gamma).abs());
    bisect(gap, m.ln() - width, m.ln() + width).exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn focs_reproduce_relative_demand(
        sigma in 0.05f64..4.0,
        theta in 0.05f64..0.95,
        delta in 0.05f64..0.95,
        m in 0.1f64..100.0,
        oc in 1e-4f64..0.05,
        oc_star in 1e-4f64..0.05,
    ) {
        let p = ModelParams::new(sigma, theta, 0.00082953, 0.99).unwrap();
        let ms = solve_ms(m, delta, oc, oc_star, &p);
        let x = x_solving_money_foc(m, ms, delta, oc, &p);
        prop_assert!(x > 0.0);
        let realized = (ms / m).ln();
        let predicted = relative_demand_log(delta, sigma, oc, oc_star).unwrap();
        prop_assert!((realized - predicted).abs() < 1e-10,
            "realized {realized}, predicted {predicted}");
    }
}
