//! Currency-substitution money-demand model.
//!
//! Real consumption `x` and liquidity services `L` combine as `x^(1-θ) L^θ`,
//! where `L` is a CES aggregate of real domestic balances `m` and real euro
//! balances valued in lei `ms`:
//!
//! ```text
//! L = { δ m^γ + (1-δ) ms^γ }^(1/γ),   γ = (σ-1)/σ
//! ```
//!
//! The share `δ` may drift over time; `(1-δ)/δ` is the liquidity degree of the
//! euro relative to the leu.

mod simulate;

pub use simulate::{simulate_dgp, simulate_dgp_seeded, NoiseSpec, SimulatedData};

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Structural parameters of the utility function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    sigma: f64,
    theta: f64,
    phi_monthly: f64,
    /// Carried for completeness: no operation depends on the discount factor.
    beta: f64,
}

impl ModelParams {
    pub fn new(sigma: f64, theta: f64, phi_monthly: f64, beta: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(param(format!("sigma must be finite and >= 0, got {sigma}")));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return Err(param(format!("theta must lie in (0, 1), got {theta}")));
        }
        if !(0.0..1.0).contains(&phi_monthly) {
            return Err(param(format!(
                "phi_monthly must lie in [0, 1), got {phi_monthly}"
            )));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(param(format!("beta must lie in (0, 1), got {beta}")));
        }
        Ok(Self {
            sigma,
            theta,
            phi_monthly,
            beta,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi_monthly(&self) -> f64 {
        self.phi_monthly
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `γ = (σ-1)/σ`, undefined at `σ = 0`.
    pub fn gamma(&self) -> Option<f64> {
        gamma_of(self.sigma).ok()
    }
}

fn gamma_of(sigma: f64) -> Result<f64> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok((sigma - 1.0) / sigma)
    } else {
        Err(param(format!("sigma must be finite and > 0, got {sigma}")))
    }
}

/// Coefficients of the cointegrating regression
/// `ln(S M*/M) = v0 + v1 t + v2 t^2 + σ (ln oc - ln oc*) + ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendCoefficients {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub sigma: f64,
}

impl TrendCoefficients {
    /// Point estimates reported for Romania, 2001:M9 to 2015:M11.
    pub const ROMANIA_2001_2015: TrendCoefficients = TrendCoefficients {
        v0: -0.037619,
        v1: -0.012215,
        v2: 0.000042,
        sigma: 0.201694,
    };

    pub fn new(v0: f64, v1: f64, v2: f64, sigma: f64) -> Result<Self> {
        let c = Self { v0, v1, v2, sigma };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.v0, self.v1, self.v2, self.sigma]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(param("trend coefficients must be finite"));
        }
        if self.sigma <= 0.0 {
            return Err(param(format!("sigma must be > 0, got {}", self.sigma)));
        }
        Ok(())
    }

    /// Deterministic part `v0 + v1 t + v2 t^2`.
    pub fn trend(&self, t: f64) -> f64 {
        self.v0 + self.v1 * t + self.v2 * t * t
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.v0, self.v1, self.v2, self.sigma]
    }
}

/// Agent balance sheet at one date, all amounts in lei.
///
/// Positivity of `p`, `m` and `ms_lei` is only required by the CES operations;
/// the budget identity accepts any finite state.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AgentState {
    pub x: f64,
    pub m: f64,
    pub ms_lei: f64,
    pub b: f64,
    pub bs_lei: f64,
    pub p: f64,
    pub z: f64,
}

impl AgentState {
    /// Checks the invariants needed to form real balances and CES powers.
    pub fn validate_for_ces(&self) -> Result<()> {
        if self.p > 0.0 && self.m > 0.0 && self.ms_lei > 0.0 {
            Ok(())
        } else {
            Err(param(
                "price level and money holdings must be strictly positive",
            ))
        }
    }
}

/// Monthly equivalent `(1 + φ_annual)^(1/12) - 1` of an annual holding cost.
pub fn annual_to_monthly_cost(phi_annual: f64) -> Result<f64> {
    if !(phi_annual > -1.0) || !phi_annual.is_finite() {
        return Err(param(format!(
            "annual cost must be finite and > -1, got {phi_annual}"
        )));
    }
    Ok((1.0 + phi_annual).powf(1.0 / 12.0) - 1.0)
}

/// Opportunity cost of holding money, `(i + φ)/(1 + i)`.
pub fn opportunity_cost(i_next: f64, phi_monthly: f64) -> Result<f64> {
    if !(i_next > -1.0) || !i_next.is_finite() || !phi_monthly.is_finite() {
        return Err(param(format!(
            "interest rate must be finite and > -1, got {i_next}"
        )));
    }
    if i_next + phi_monthly <= 0.0 {
        return Err(Error::NonPositiveOpportunityCost {
            rate: i_next,
            phi: phi_monthly,
        });
    }
    Ok((i_next + phi_monthly) / (1.0 + i_next))
}

fn check_share(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(param(format!("delta must lie in (0, 1), got {delta}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(param(format!("{name} must be finite and > 0, got {v}")))
    }
}

/// CES liquidity production function; the `σ = 1` case is the Cobb-Douglas limit
/// `m^δ ms^(1-δ)`.
pub fn ces_liquidity(m_real: f64, ms_real: f64, delta: f64, sigma: f64) -> Result<f64> {
    check_positive("m_real", m_real)?;
    check_positive("ms_real", ms_real)?;
    check_share(delta)?;
    let gamma = gamma_of(sigma)?;
    if gamma == 0.0 {
        return Ok(m_real.powf(delta) * ms_real.powf(1.0 - delta));
    }
    // Factor out the larger balance so extreme exponents stay representable.
    let scale = m_real.max(ms_real);
    let (a, b) = (m_real / scale, ms_real / scale);
    let inner = delta * a.powf(gamma) + (1.0 - delta) * b.powf(gamma);
    Ok(scale * inner.powf(1.0 / gamma))
}

/// Period utility `x^(1-θ) L^θ`.
pub fn utility(
    x_real: f64,
    m_real: f64,
    ms_real: f64,
    delta: f64,
    params: &ModelParams,
) -> Result<f64> {
    check_positive("x_real", x_real)?;
    let liquidity = ces_liquidity(m_real, ms_real, delta, params.sigma)?;
    let theta = params.theta;
    Ok(x_real.powf(1.0 - theta) * liquidity.powf(theta))
}

struct FocTerms {
    /// `(θ/(1-θ)) {δ m^γ + (1-δ) ms^γ}^(-1) x`
    common: f64,
    gamma: f64,
}

fn foc_terms(
    x_real: f64,
    m_real: f64,
    ms_real: f64,
    delta: f64,
    oc: f64,
    params: &ModelParams,
) -> Result<FocTerms> {
    check_positive("x_real", x_real)?;
    check_positive("m_real", m_real)?;
    check_positive("ms_real", ms_real)?;
    check_positive("opportunity cost", oc)?;
    check_share(delta)?;
    let gamma = gamma_of(params.sigma)?;
    let theta = params.theta;
    let inner = delta * m_real.powf(gamma) + (1.0 - delta) * ms_real.powf(gamma);
    Ok(FocTerms {
        common: theta / (1.0 - theta) * x_real / inner,
        gamma,
    })
}

/// Residual of the domestic-money first-order condition:
/// `(θ/(1-θ)) {δ m^γ + (1-δ) ms^γ}^(-1) x - (oc/δ) m^(1-γ)`.
pub fn foc_money_gap(
    x_real: f64,
    m_real: f64,
    ms_real: f64,
    delta: f64,
    oc_domestic: f64,
    params: &ModelParams,
) -> Result<f64> {
    let f = foc_terms(x_real, m_real, ms_real, delta, oc_domestic, params)?;
    Ok(f.common - oc_domestic / delta * m_real.powf(1.0 - f.gamma))
}

/// Residual of the euro first-order condition:
/// `(θ/(1-θ)) {δ m^γ + (1-δ) ms^γ}^(-1) x - (oc*/(1-δ)) ms^(1-γ)`.
pub fn foc_euro_gap(
    x_real: f64,
    m_real: f64,
    ms_real: f64,
    delta: f64,
    oc_foreign: f64,
    params: &ModelParams,
) -> Result<f64> {
    let f = foc_terms(x_real, m_real, ms_real, delta, oc_foreign, params)?;
    Ok(f.common - oc_foreign / (1.0 - delta) * ms_real.powf(1.0 - f.gamma))
}

/// Log of euro holdings relative to leu holdings implied by the two
/// first-order conditions: `σ ln((1-δ)/δ) + σ (ln oc - ln oc*)`.
///
/// `σ = 0` is admitted and yields 0.
pub fn relative_demand_log(
    delta: f64,
    sigma: f64,
    oc_domestic: f64,
    oc_foreign: f64,
) -> Result<f64> {
    check_share(delta)?;
    check_positive("oc_domestic", oc_domestic)?;
    check_positive("oc_foreign", oc_foreign)?;
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(param(format!("sigma must be finite and >= 0, got {sigma}")));
    }
    Ok(sigma * ((1.0 - delta) / delta).ln() + sigma * (oc_domestic.ln() - oc_foreign.ln()))
}

/// Liquidity degree `(1-δ)/δ = exp((v0 + v1 t + v2 t^2 + ε)/σ)` at trend index `t`.
///
/// `t` counts months from the trend origin; dates before the origin give negative `t`.
pub fn delta_ratio_at(t: i64, coeffs: &TrendCoefficients, eps: f64) -> Result<f64> {
    coeffs.validate()?;
    if !eps.is_finite() {
        return Err(param("disturbance must be finite"));
    }
    Ok(((coeffs.trend(t as f64) + eps) / coeffs.sigma).exp())
}

/// Share `δ = 1/(1 + ratio)` at trend index `t`.
pub fn delta_at(t: i64, coeffs: &TrendCoefficients, eps: f64) -> Result<f64> {
    let ratio = delta_ratio_at(t, coeffs, eps)?;
    Ok(1.0 / (1.0 + ratio))
}

/// Budget-constraint residual, resources minus uses, in lei.
///
/// Euro positions carried from the previous month are revalued by `fx_growth`
/// (`S_t / S_{t-1}`); `i_dom` and `i_for` are the rates paid on bonds held over
/// the month.
pub fn budget_gap(
    prev: &AgentState,
    cur: &AgentState,
    i_dom: f64,
    i_for: f64,
    fx_growth: f64,
    phi_monthly: f64,
) -> f64 {
    let resources = prev.m * (1.0 - phi_monthly)
        + fx_growth * prev.ms_lei * (1.0 - phi_monthly)
        + prev.b * (1.0 + i_dom)
        + fx_growth * prev.bs_lei * (1.0 + i_for)
        + cur.z;
    let uses = cur.x + cur.m + cur.ms_lei + cur.b + cur.bs_lei;
    resources - uses
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(sigma: f64, theta: f64) -> ModelParams {
        ModelParams::new(sigma, theta, 0.00082953, 0.99).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.2, 0.0, 0.0, 0.9).is_err());
        assert!(ModelParams::new(0.2, 1.0, 0.0, 0.9).is_err());
        assert!(ModelParams::new(-0.1, 0.5, 0.0, 0.9).is_err());
        assert!(ModelParams::new(0.2, 0.5, 1.0, 0.9).is_err());
        assert!(ModelParams::new(0.2, 0.5, 0.0, 1.0).is_err());
        let p = ModelParams::new(0.0, 0.5, 0.0, 0.9).unwrap();
        assert_eq!(p.gamma(), None);
        let p = params(0.5, 0.5);
        assert_eq!(p.gamma(), Some(-1.0));
        assert!(TrendCoefficients::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(TrendCoefficients::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn monthly_cost_examples() {
        assert!((annual_to_monthly_cost(0.01).unwrap() - 0.00082953).abs() < 1e-8);
        assert_eq!(annual_to_monthly_cost(0.0).unwrap(), 0.0);
        assert!((annual_to_monthly_cost(0.126825).unwrap() - 0.01).abs() < 1e-6);
        assert!(annual_to_monthly_cost(-1.0).is_err());
    }

    #[test]
    fn opportunity_cost_examples() {
        assert!((opportunity_cost(0.0, 0.00082953).unwrap() - 0.00082953).abs() < 1e-15);
        assert!((opportunity_cost(0.01, 0.0).unwrap() - 0.00990099).abs() < 1e-8);
        assert!(matches!(
            opportunity_cost(-0.0009, 0.00082953),
            Err(Error::NonPositiveOpportunityCost { .. })
        ));
        assert!(opportunity_cost(-1.0, 0.5).is_err());
    }

    #[test]
    fn ces_examples() {
        for &(delta, sigma) in &[(0.1, 0.3), (0.5, 1.0), (0.9, 4.0)] {
            assert!((ces_liquidity(2.5, 2.5, delta, sigma).unwrap() - 2.5).abs() < 1e-12);
        }
        assert!((ces_liquidity(1.0, 3.0, 0.5, 0.5).unwrap() - 1.5).abs() < 1e-12);
        assert!((ces_liquidity(4.0, 9.0, 0.5, 1.0).unwrap() - 6.0).abs() < 1e-12);
        assert!(ces_liquidity(0.0, 1.0, 0.5, 1.0).is_err());
        assert!(ces_liquidity(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ces_liquidity(1.0, 1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn utility_examples() {
        for &(theta, delta, sigma) in &[(0.1, 0.2, 0.3), (0.7, 0.6, 2.0)] {
            let u = utility(1.0, 1.0, 1.0, delta, &params(sigma, theta)).unwrap();
            assert!((u - 1.0).abs() < 1e-14);
        }
        let u = utility(4.0, 9.0, 9.0, 0.3, &params(0.7, 0.5)).unwrap();
        assert!((u - 6.0).abs() < 1e-12);
        let u = utility(2.0, 1.0, 1.0, 0.6, &params(2.0, 0.3)).unwrap();
        assert!((u - 1.62450).abs() < 1e-5);
    }

    #[test]
    fn foc_examples() {
        let p = params(0.5, 0.5);
        let g = foc_money_gap(1.0, 1.0, 1.0, 0.5, 1.0, &p).unwrap();
        assert!((g + 1.0).abs() < 1e-14);
        let g = foc_euro_gap(1.0, 1.0, 1.0, 0.5, 1.0, &p).unwrap();
        assert!((g + 1.0).abs() < 1e-14);

        // Swap roles: euro condition at (m, ms, δ) equals money condition at (ms, m, 1-δ).
        let p = params(1.7, 0.4);
        let a = foc_euro_gap(2.0, 0.7, 3.1, 0.35, 0.02, &p).unwrap();
        let b = foc_money_gap(2.0, 3.1, 0.7, 0.65, 0.02, &p).unwrap();
        assert!((a - b).abs() < 1e-12);

        let a = foc_money_gap(3.0, 2.0, 2.0, 0.5, 0.01, &p).unwrap();
        let b = foc_euro_gap(3.0, 2.0, 2.0, 0.5, 0.01, &p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn foc_zero_by_construction_and_linear_in_x() {
        let p = params(0.8, 0.3);
        let (m, ms, delta, oc): (f64, f64, f64, f64) = (2.0, 5.0, 0.4, 0.015);
        let gamma = p.gamma().unwrap();
        let inner = delta * m.powf(gamma) + (1.0 - delta) * ms.powf(gamma);
        let x = (oc / delta) * m.powf(1.0 - gamma) * inner * (1.0 - p.theta()) / p.theta();
        assert!(foc_money_gap(x, m, ms, delta, oc, &p).unwrap().abs() < 1e-12);

        let rhs = (oc / delta) * m.powf(1.0 - gamma);
        let g1 = foc_money_gap(1.3, m, ms, delta, oc, &p).unwrap() + rhs;
        let g2 = foc_money_gap(2.6, m, ms, delta, oc, &p).unwrap() + rhs;
        assert!((g2 - 2.0 * g1).abs() < 1e-12);
    }

    #[test]
    fn relative_demand_examples() {
        assert_eq!(relative_demand_log(0.5, 0.7, 0.01, 0.01).unwrap(), 0.0);
        assert_eq!(relative_demand_log(0.2, 0.0, 0.03, 0.01).unwrap(), 0.0);
        let v = relative_demand_log(0.2, 2.0, 0.01, 0.01).unwrap();
        assert!((v - 2.77259).abs() < 1e-5);
        assert!(relative_demand_log(0.0, 1.0, 0.01, 0.01).is_err());
        assert!(relative_demand_log(0.5, 1.0, 0.0, 0.01).is_err());
    }

    #[test]
    fn delta_ratio_examples() {
        let zero = TrendCoefficients::new(0.0, 0.0, 0.0, 0.5).unwrap();
        assert_eq!(delta_ratio_at(0, &zero, 0.0).unwrap(), 1.0);
        assert_eq!(delta_at(0, &zero, 0.0).unwrap(), 0.5);

        let c = TrendCoefficients::ROMANIA_2001_2015;
        assert!((delta_ratio_at(0, &c, 0.0).unwrap() - 0.82986).abs() < 1e-4);
        assert!((delta_ratio_at(145, &c, 0.0).unwrap() - 0.01015).abs() < 1e-4);

        let bad = TrendCoefficients {
            sigma: 0.0,
            ..TrendCoefficients::ROMANIA_2001_2015
        };
        assert!(delta_ratio_at(0, &bad, 0.0).is_err());
    }

    #[test]
    fn budget_examples() {
        let prev = AgentState::default();
        let cur = AgentState {
            x: 120.0,
            z: 120.0,
            p: 1.0,
            ..AgentState::default()
        };
        assert_eq!(budget_gap(&prev, &cur, 0.01, 0.002, 1.0, 0.001), 0.0);

        let prev = AgentState {
            m: 100.0,
            ..AgentState::default()
        };
        let cur = AgentState {
            x: 99.0,
            ..AgentState::default()
        };
        assert!(budget_gap(&prev, &cur, 0.0, 0.0, 1.0, 0.01).abs() < 1e-12);

        let prev = AgentState {
            x: 50.0,
            m: 300.0,
            ms_lei: 200.0,
            b: 1000.0,
            bs_lei: 400.0,
            p: 1.2,
            z: 80.0,
        };
        let cur = AgentState {
            x: 70.0,
            m: 310.0,
            ms_lei: 190.0,
            b: 990.0,
            bs_lei: 420.0,
            p: 1.21,
            z: 75.0,
        };
        let base = budget_gap(&prev, &cur, 0.012, 0.003, 1.01, 0.0008);
        let more = AgentState { x: 71.0, ..cur };
        let bumped = budget_gap(&prev, &more, 0.012, 0.003, 1.01, 0.0008);
        assert!((bumped - base + 1.0).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn ces_homogeneous_degree_one(
            m in 0.01f64..100.0, ms in 0.01f64..100.0,
            delta in 0.01f64..0.99, sigma in 0.05f64..10.0, lambda in 0.01f64..100.0,
        ) {
            let base = ces_liquidity(m, ms, delta, sigma).unwrap();
            let scaled = ces_liquidity(lambda * m, lambda * ms, delta, sigma).unwrap();
            prop_assert!((scaled - lambda * base).abs() <= 1e-12 * (lambda * base).abs().max(1e-300) * 10.0);
        }

        #[test]
        fn ces_continuous_at_unit_elasticity(
            m in 0.1f64..10.0, ms in 0.1f64..10.0, delta in 0.01f64..0.99,
        ) {
            let limit = ces_liquidity(m, ms, delta, 1.0).unwrap();
            for s in [1.0 - 1e-6, 1.0 + 1e-6] {
                let v = ces_liquidity(m, ms, delta, s).unwrap();
                prop_assert!(((v - limit) / limit).abs() < 1e-4);
            }
        }

        #[test]
        fn delta_stays_in_unit_interval(
            t in 0i64..2000, v0 in -5.0f64..5.0, v1 in -0.05f64..0.05,
            v2 in -1e-4f64..1e-4, sigma in 0.05f64..5.0, eps in -2.0f64..2.0,
        ) {
            let c = TrendCoefficients::new(v0, v1, v2, sigma).unwrap();
            let d = delta_at(t, &c, eps).unwrap();
            prop_assert!((0.0..=1.0).contains(&d));
            let r = delta_ratio_at(t, &c, eps).unwrap();
            if r > 1e-15 && r < 1e15 {
                prop_assert!(d > 0.0 && d < 1.0);
            }
        }
    }

    #[test]
    fn relative_demand_monotone_on_grid() {
        let sigma = 0.6;
        let deltas: Vec<f64> = (1..99).map(|k| k as f64 / 100.0).collect();
        let vals: Vec<f64> = deltas
            .iter()
            .map(|&d| relative_demand_log(d, sigma, 0.01, 0.004).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        let ocs: Vec<f64> = (1..200).map(|k| k as f64 * 1e-4).collect();
        let vals: Vec<f64> = ocs
            .iter()
            .map(|&oc| relative_demand_log(0.3, sigma, oc, 0.004).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]));
    }
}
