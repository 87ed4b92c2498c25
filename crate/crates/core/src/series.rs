//! Monthly-calendar series container.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A calendar month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonthStamp {
    year: i32,
    month: u8,
}

impl MonthStamp {
    pub fn new(year: i32, month: u8) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::Parameter(format!("month {month} not in 1..=12")));
        }
        Ok(Self { year, month })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    /// Months since 0000-01, a linear index used for calendar arithmetic.
    fn ordinal(&self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    fn from_ordinal(ord: i64) -> Self {
        Self {
            year: ord.div_euclid(12) as i32,
            month: (ord.rem_euclid(12) + 1) as u8,
        }
    }

    /// Advance by `k` months (negative moves backwards).
    pub fn add_months(&self, k: i64) -> Self {
        Self::from_ordinal(self.ordinal() + k)
    }

    /// Signed number of months from `self` to `other`.
    pub fn months_until(&self, other: &MonthStamp) -> i64 {
        other.ordinal() - self.ordinal()
    }
}

impl PartialOrd for MonthStamp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonthStamp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.year, self.month).cmp(&(other.year, other.month))
    }
}

impl fmt::Display for MonthStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for MonthStamp {
    type Err = Error;

    /// Parses `YYYY-MM`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse month stamp {s:?}, expected YYYY-MM"));
        let (y, m) = s.trim().split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 {
            return Err(bad());
        }
        let year: i32 = y.parse().map_err(|_| bad())?;
        let month: u8 = m.parse().map_err(|_| bad())?;
        MonthStamp::new(year, month)
    }
}

impl Serialize for MonthStamp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MonthStamp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of months from `a` to `b`, both ends included.
pub fn span_length(a: MonthStamp, b: MonthStamp) -> Result<usize> {
    if a > b {
        return Err(Error::Ordering(a, b));
    }
    Ok(a.months_until(&b) as usize + 1)
}

/// A gap-free run of monthly observations.
///
/// Observation `k` belongs to `start` advanced by `k` months. At least one
/// value is present and all values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlySeries {
    start: MonthStamp,
    values: Vec<f64>,
}

impl MonthlySeries {
    pub fn new(start: MonthStamp, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain {
                date: start.add_months(k as i64),
                value: values[k],
                reason: "value must be finite",
            });
        }
        Ok(Self { start, values })
    }

    pub fn start(&self) -> MonthStamp {
        self.start
    }

    /// Last observed month.
    pub fn end(&self) -> MonthStamp {
        self.start.add_months(self.values.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn date_at(&self, k: usize) -> MonthStamp {
        self.start.add_months(k as i64)
    }

    pub fn iter(&self) -> impl Iterator<Item = (MonthStamp, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.date_at(k), v))
    }

    /// Applies `f` elementwise, keeping the dates.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.start, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Restricts to the inclusive window `[from, to]`.
    pub fn window(&self, from: MonthStamp, to: MonthStamp) -> Result<Self> {
        if from > to {
            return Err(Error::Ordering(from, to));
        }
        if from < self.start || to > self.end() {
            return Err(Error::Alignment(format!(
                "window {from}..{to} not inside {}..{}",
                self.start,
                self.end()
            )));
        }
        let lo = self.start.months_until(&from) as usize;
        let hi = self.start.months_until(&to) as usize;
        Ok(Self {
            start: from,
            values: self.values[lo..=hi].to_vec(),
        })
    }
}

/// Restricts both series to their common date range.
pub fn align(a: &MonthlySeries, b: &MonthlySeries) -> Result<(MonthlySeries, MonthlySeries)> {
    let from = a.start().max(b.start());
    let to = a.end().min(b.end());
    if from > to {
        return Err(Error::Alignment(format!(
            "{}..{} and {}..{} are disjoint",
            a.start(),
            a.end(),
            b.start(),
            b.end()
        )));
    }
    Ok((a.window(from, to)?, b.window(from, to)?))
}

/// Elementwise natural logarithm.
pub fn log_series(s: &MonthlySeries) -> Result<MonthlySeries> {
    if let Some((date, value)) = s.iter().find(|&(_, v)| v <= 0.0) {
        return Err(Error::Domain {
            date,
            value,
            reason: "logarithm requires a strictly positive value",
        });
    }
    s.map(f64::ln)
}

/// Differences the series `order` times; the start moves forward by `order` months.
pub fn diff(s: &MonthlySeries, order: usize) -> Result<MonthlySeries> {
    if order == 0 {
        return Err(Error::Parameter("difference order must be positive".into()));
    }
    if s.len() <= order {
        return Err(Error::InsufficientData {
            needed: order + 1,
            got: s.len(),
        });
    }
    let mut values = s.values().to_vec();
    for _ in 0..order {
        values = values.windows(2).map(|w| w[1] - w[0]).collect();
    }
    MonthlySeries::new(s.start().add_months(order as i64), values)
}

/// Sample Pearson correlation of two aligned series.
pub fn pearson_correlation(a: &MonthlySeries, b: &MonthlySeries) -> Result<f64> {
    if a.start() != b.start() || a.len() != b.len() {
        return Err(Error::Alignment(format!(
            "series must be aligned: {}+{} vs {}+{}",
            a.start(),
            a.len(),
            b.start(),
            b.len()
        )));
    }
    if a.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: a.len(),
        });
    }
    let (x, y) = (a.values(), b.values());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let (dx, dy) = (xi - mx, yi - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::DegenerateInput(
            "correlation needs nonzero variance in both series".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ms(y: i32, m: u8) -> MonthStamp {
        MonthStamp::new(y, m).unwrap()
    }

    fn series(start: MonthStamp, v: &[f64]) -> MonthlySeries {
        MonthlySeries::new(start, v.to_vec()).unwrap()
    }

    #[test]
    fn month_validation_and_order() {
        assert!(MonthStamp::new(2001, 0).is_err());
        assert!(MonthStamp::new(2001, 13).is_err());
        assert!(ms(2001, 12) < ms(2002, 1));
        assert!(ms(2001, 9) < ms(2001, 10));
        assert_eq!(ms(2001, 11).add_months(3), ms(2002, 2));
        assert_eq!(ms(2001, 1).add_months(-1), ms(2000, 12));
        assert_eq!("2015-11".parse::<MonthStamp>().unwrap(), ms(2015, 11));
        assert!("2015-13".parse::<MonthStamp>().is_err());
        assert!("2015/11".parse::<MonthStamp>().is_err());
        assert_eq!(ms(2003, 4).to_string(), "2003-04");
    }

    #[test]
    fn span_length_examples() {
        assert_eq!(span_length(ms(2001, 9), ms(2001, 9)).unwrap(), 1);
        assert_eq!(span_length(ms(2001, 9), ms(2015, 11)).unwrap(), 171);
        assert_eq!(span_length(ms(2001, 9), ms(2002, 9)).unwrap(), 13);
        assert!(matches!(
            span_length(ms(2002, 1), ms(2001, 9)),
            Err(Error::Ordering(..))
        ));
    }

    #[test]
    fn construction_rejects_bad_values() {
        assert!(MonthlySeries::new(ms(2001, 1), vec![]).is_err());
        assert!(MonthlySeries::new(ms(2001, 1), vec![1.0, f64::NAN]).is_err());
        assert!(MonthlySeries::new(ms(2001, 1), vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn align_examples() {
        let a = series(ms(2001, 9), &vec![1.0; 171]);
        let (x, y) = align(&a, &a).unwrap();
        assert_eq!(x, a);
        assert_eq!(y, a);

        let b_len = span_length(ms(2003, 1), ms(2016, 5)).unwrap();
        let b = series(ms(2003, 1), &vec![2.0; b_len]);
        let (x, y) = align(&a, &b).unwrap();
        assert_eq!(x.start(), ms(2003, 1));
        assert_eq!(x.end(), ms(2015, 11));
        assert_eq!(y.start(), ms(2003, 1));
        assert_eq!(y.end(), ms(2015, 11));

        let c = series(ms(2001, 1), &[1.0; 24]);
        let d = series(ms(2005, 1), &[1.0; 24]);
        assert!(matches!(align(&c, &d), Err(Error::Alignment(_))));
    }

    #[test]
    fn log_examples() {
        let s = series(ms(2001, 1), &[1.0, 1.0, 1.0]);
        assert_eq!(log_series(&s).unwrap().values(), &[0.0, 0.0, 0.0]);
        let s = series(ms(2001, 1), &[1.0, std::f64::consts::E]);
        assert!((log_series(&s).unwrap().values()[1] - 1.0).abs() < 1e-15);
        let s = series(ms(2001, 1), &[1.0, 0.0]);
        match log_series(&s) {
            Err(Error::Domain { date, .. }) => assert_eq!(date, ms(2001, 2)),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn diff_examples() {
        let s = series(ms(2001, 1), &[5.0; 6]);
        assert!(diff(&s, 1).unwrap().values().iter().all(|&v| v == 0.0));
        let s = series(ms(2001, 1), &[1.0, 2.0, 3.0, 4.0]);
        let d = diff(&s, 1).unwrap();
        assert_eq!(d.values(), &[1.0, 1.0, 1.0]);
        assert_eq!(d.start(), ms(2001, 2));
        let s = series(ms(2001, 1), &[1.0, 2.0]);
        assert!(matches!(diff(&s, 2), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn pearson_examples() {
        let a = series(ms(2001, 1), &[1.0, 2.0, 3.0, 4.0]);
        let neg = a.map(|v| -v).unwrap();
        let b = series(ms(2001, 1), &[1.0, 3.0, 2.0, 4.0]);
        assert!((pearson_correlation(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson_correlation(&a, &neg).unwrap() + 1.0).abs() < 1e-15);
        assert!((pearson_correlation(&a, &b).unwrap() - 0.8).abs() < 1e-12);
        let flat = series(ms(2001, 1), &[2.0; 4]);
        assert!(matches!(
            pearson_correlation(&a, &flat),
            Err(Error::DegenerateInput(_))
        ));
    }

    fn arb_values(min_len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-50.0f64..50.0, min_len..60)
    }

    proptest! {
        #[test]
        fn second_difference_composes(v in arb_values(3)) {
            let s = series(ms(2000, 1), &v);
            let twice = diff(&diff(&s, 1).unwrap(), 1).unwrap();
            let direct = diff(&s, 2).unwrap();
            prop_assert_eq!(twice.start(), direct.start());
            for (a, b) in twice.values().iter().zip(direct.values()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn log_exp_roundtrip(v in prop::collection::vec(-30.0f64..30.0, 1..60)) {
            let s = series(ms(2000, 1), &v);
            let back = log_series(&s.map(f64::exp).unwrap()).unwrap();
            for (a, b) in back.values().iter().zip(&v) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn pearson_affine_invariant(
            v in arb_values(4),
            scale in 0.01f64..100.0,
            shift in -100.0f64..100.0,
        ) {
            let a = series(ms(2000, 1), &v);
            let b = a.map(|x| (x * 0.37).sin() + x * x * 0.01).unwrap();
            let (Ok(r0), Ok(r1)) = (
                pearson_correlation(&a, &b),
                pearson_correlation(&a.map(|x| scale * x + shift).unwrap(), &b),
            ) else {
                return Ok(());
            };
            prop_assert!((r0 - r1).abs() <= 1e-12);
        }

        #[test]
        fn align_idempotent(off in 0i64..20, la in 1usize..40, lb in 1usize..40) {
            let a = series(ms(2000, 1), &vec![1.0; la]);
            let b = series(ms(2000, 1).add_months(off), &vec![2.0; lb]);
            if let Ok((x, y)) = align(&a, &b) {
                let (x2, y2) = align(&x, &y).unwrap();
                prop_assert_eq!(x2, x);
                prop_assert_eq!(y2, y);
            }
        }
    }
}
