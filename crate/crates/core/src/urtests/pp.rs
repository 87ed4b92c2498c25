use super::{df_regression, DeterministicSpec, TestKind, UnitRootReport};
use crate::error::{Error, Result};
use crate::kernel::{long_run_variance, BandwidthPolicy};
use crate::series::MonthlySeries;

const MIN_OBS: usize = 25;

/// Phillips-Perron `Z_t` test.
///
/// The unaugmented Dickey-Fuller t-ratio is corrected with a Bartlett long-run
/// variance `λ²` of the regression residuals:
///
/// ```text
/// Z_t = sqrt(γ0/λ²) t_ρ - (λ² - γ0) / (2λ) · T se(ρ) / s
/// ```
///
/// With a zero bandwidth `λ² = γ0` and the statistic equals the Dickey-Fuller t-ratio.
pub fn pp_test(
    s: &MonthlySeries,
    spec: DeterministicSpec,
    bandwidth_policy: BandwidthPolicy,
) -> Result<UnitRootReport> {
    let y = s.values();
    if y.len() < MIN_OBS {
        return Err(Error::InsufficientData {
            needed: MIN_OBS,
            got: y.len(),
        });
    }
    let reg = df_regression(y, spec, 0, 0)?;
    let u = reg.fit.residuals.as_slice();
    let t = u.len() as f64;
    let bandwidth = bandwidth_policy.resolve(&[u]);

    let gamma0 = reg.fit.ssr / t;
    let lambda2 = long_run_variance(u, bandwidth);
    if lambda2 <= 0.0 {
        return Err(Error::DegenerateRegression(
            "non-positive residual long-run variance".into(),
        ));
    }
    let se = reg.fit.std_err(0);
    let s_dev = reg.fit.sigma2().sqrt();
    let lambda = lambda2.sqrt();
    let z_t = (gamma0 / lambda2).sqrt() * reg.t_ratio()
        - (lambda2 - gamma0) / (2.0 * lambda) * (t * se / s_dev);

    Ok(UnitRootReport::new(
        TestKind::Pp,
        spec,
        z_t,
        bandwidth,
        reg.fit.nobs(),
    ))
}
