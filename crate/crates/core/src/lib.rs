//! Open-economy money demand with a time-varying liquidity share.
//!
//! The crate is organised around four pieces:
//!
//! * [`series`]: a contiguous monthly time-series container and the basic
//!   transforms everything else builds on.
//! * [`model`]: the CES liquidity aggregator, opportunity costs, first-order
//!   condition residuals, relative currency demand and the trend
//!   parametrisation of the liquidity share, plus a synthetic data generator.
//! * [`urtests`]: augmented Dickey-Fuller and Phillips-Perron unit-root tests
//!   with MacKinnon critical values.
//! * [`coint`]: fully modified OLS for a single I(1) regressor with polynomial
//!   trend, and the Hansen Lc parameter-instability test.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coint;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod model;
pub mod series;
pub mod urtests;

pub use error::{Error, Result};
pub use series::{MonthStamp, MonthlySeries};
