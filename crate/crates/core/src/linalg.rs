//! Dense least squares used by the unit-root and cointegration regressions.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative singular-value cutoff below which a design is treated as rank deficient.
const RANK_TOL: f64 = 1e-10;

/// An ordinary least-squares fit `y = X b + e`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub coef: DVector<f64>,
    pub residuals: DVector<f64>,
    /// `(X'X)^{-1}`
    pub xtx_inv: DMatrix<f64>,
    pub ssr: f64,
}

impl LeastSquares {
    pub fn nobs(&self) -> usize {
        self.residuals.len()
    }

    pub fn nparams(&self) -> usize {
        self.coef.len()
    }

    /// Residual variance with a degrees-of-freedom correction.
    pub fn sigma2(&self) -> f64 {
        self.ssr / (self.nobs() - self.nparams()) as f64
    }

    /// Conventional standard error of coefficient `k`.
    pub fn std_err(&self, k: usize) -> f64 {
        (self.sigma2() * self.xtx_inv[(k, k)]).sqrt()
    }
}

/// Inverse of `X'X` for a full-column-rank design, computed from the SVD of the
/// column-equilibrated design so that polynomial trend columns stay well conditioned.
pub fn gram_inverse(x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (n, p) = x.shape();
    if n < p {
        return Err(Error::DegenerateRegression(format!(
            "{n} observations for {p} regressors"
        )));
    }
    let scale: Vec<f64> = (0..p).map(|j| x.column(j).norm()).collect();
    if let Some(j) = scale.iter().position(|&s| s == 0.0 || !s.is_finite()) {
        return Err(Error::DegenerateRegression(format!(
            "regressor column {j} is identically zero"
        )));
    }
    let mut xs = x.clone();
    for (j, s) in scale.iter().enumerate() {
        xs.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = xs.svd(false, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= RANK_TOL * smax {
        return Err(Error::DegenerateRegression(
            "regressors are collinear".into(),
        ));
    }
    let vt = svd.v_t.expect("requested V^T");
    let inv_sq = DMatrix::from_diagonal(&svd.singular_values.map(|s| 1.0 / (s * s)));
    let scaled_inv = vt.transpose() * inv_sq * vt;
    Ok(DMatrix::from_fn(p, p, |i, j| {
        scaled_inv[(i, j)] / (scale[i] * scale[j])
    }))
}

/// Least-squares fit of `y` on the columns of `x`.
pub fn ols(x: &DMatrix<f64>, y: &DVector<f64>) -> Result<LeastSquares> {
    if x.nrows() != y.len() {
        return Err(Error::LengthMismatch(x.nrows(), y.len()));
    }
    if x.nrows() <= x.ncols() {
        return Err(Error::InsufficientData {
            needed: x.ncols() + 1,
            got: x.nrows(),
        });
    }
    let xtx_inv = gram_inverse(x)?;
    let coef = &xtx_inv * (x.transpose() * y);
    let residuals = y - x * &coef;
    let ssr = residuals.norm_squared();
    Ok(LeastSquares {
        coef,
        residuals,
        xtx_inv,
        ssr,
    })
}
