use super::{df_regression, DeterministicSpec, LagPolicy, TestKind, UnitRootReport};
use crate::error::{Error, Result};
use crate::series::MonthlySeries;

/// Minimum observations beyond the lag order.
const MIN_EXTRA_OBS: usize = 20;

/// Augmented Dickey-Fuller test.
///
/// Under [`LagPolicy::Aic`] every lag order up to the maximum is fitted on the
/// common sample that the largest order allows; the winner is then refitted on
/// the longest sample available to it.
pub fn adf_test(
    s: &MonthlySeries,
    spec: DeterministicSpec,
    lag_policy: LagPolicy,
) -> Result<UnitRootReport> {
    let y = s.values();
    let k_max = lag_policy.max_lags();
    let needed = MIN_EXTRA_OBS + k_max;
    if y.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: y.len(),
        });
    }

    let lags = match lag_policy {
        LagPolicy::Fixed(k) => k,
        LagPolicy::Aic(k_max) => {
            let mut best = (f64::INFINITY, 0);
            for k in 0..=k_max {
                let reg = df_regression(y, spec, k, k_max)?;
                let n = reg.fit.nobs() as f64;
                let aic = n * (reg.fit.ssr / n).ln() + 2.0 * reg.fit.nparams() as f64;
                if aic < best.0 {
                    best = (aic, k);
                }
            }
            best.1
        }
    };

    let reg = df_regression(y, spec, lags, lags)?;
    Ok(UnitRootReport::new(
        TestKind::Adf,
        spec,
        reg.t_ratio(),
        lags,
        reg.fit.nobs(),
    ))
}
