//! Report serialization. Every floating-point number is written with nine
//! significant digits.

use euroliq_core::coint::FmolsReport;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::montecarlo::MonteCarloSummary;
use crate::pipeline::{DeltaPoint, EstimationReport, LabeledUnitRoot};

pub const TOOL: &str = "euroliq";

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Text of `x` rounded to nine significant digits.
pub fn num(x: f64) -> String {
    round_sig(x).to_string()
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = json!(round_sig(x));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with rounded numbers and a trailing newline.
pub fn render_json(mut v: Value) -> Result<String> {
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn to_value(x: &impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn named4(a: [f64; 4]) -> Value {
    json!({ "v0": a[0], "v1": a[1], "v2": a[2], "sigma": a[3] })
}

pub fn fmols_json(r: &FmolsReport) -> Value {
    json!({
        "coefficients": named4(r.coefficients.as_array()),
        "se": named4(r.standard_errors),
        "t": r.t_statistics.map(named4),
        "p": r.p_values.map(named4),
        "r2": r.r_squared,
        "lc": r.lc.map(|l| l.statistic),
        "lc_p_range": r.lc.map(|l| l.p_value_range),
        "lc_critical_values": r.lc.map(|l| l.critical_values),
        "lc_reject_at_10": r.lc.map(|l| l.reject_at_10),
        "n_obs": r.n_obs,
        "effective_obs": r.effective_obs,
        "trend": r.trend,
        "trend_origin": r.trend_origin,
        "bandwidth": r.lrc.bandwidth,
        "kernel": r.lrc.kernel,
        "long_run_covariance": r.lrc.omega,
        "one_sided_covariance": r.lrc.lambda,
        "first_stage": named4(r.first_stage),
        "degenerate": r.degenerate,
    })
}

pub fn delta_path_json(path: &[DeltaPoint]) -> Value {
    Value::Array(
        path.iter()
            .map(|p| json!({ "date": p.date, "t": p.t, "ratio": p.ratio, "delta": p.delta }))
            .collect(),
    )
}

/// Skeleton shared by every JSON report.
pub fn report_base(command: &str, config: Value, input_digest: Option<&str>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("config".into(), config);
    m.insert("input_digest".into(), json!(input_digest));
    m.insert(
        "metadata".into(),
        json!({ "tool": TOOL, "version": env!("CARGO_PKG_VERSION"), "command": command }),
    );
    m
}

pub fn insert_metadata(report: &mut Map<String, Value>, key: &str, value: Value) {
    if let Some(Value::Object(meta)) = report.get_mut("metadata") {
        meta.insert(key.into(), value);
    }
}

pub fn estimation_into(report: &mut Map<String, Value>, est: &EstimationReport) -> Result<()> {
    report.insert("fmols".into(), fmols_json(&est.fmols));
    report.insert("delta_path".into(), delta_path_json(&est.delta_path));
    report.insert("correlation".into(), json!(est.correlation));
    insert_metadata(report, "indexing", to_value(&est.indexing)?);
    Ok(())
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn label(x: &impl Serialize) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(_) => String::new(),
    }
}

pub fn unit_roots_csv(reports: &[LabeledUnitRoot]) -> Result<String> {
    let rows = reports
        .iter()
        .map(|l| {
            let r = &l.report;
            vec![
                label(&l.series),
                label(&r.test),
                label(&r.spec),
                num(r.statistic),
                r.lags_or_bandwidth.to_string(),
                r.nobs.to_string(),
                num(r.critical_values.one),
                num(r.critical_values.five),
                num(r.critical_values.ten),
                num(r.approx_p_value),
                r.reject_at.one.to_string(),
                r.reject_at.five.to_string(),
                r.reject_at.ten.to_string(),
            ]
        })
        .collect();
    csv_string(
        &[
            "series",
            "test",
            "spec",
            "statistic",
            "lags_or_bandwidth",
            "nobs",
            "cv_1",
            "cv_5",
            "cv_10",
            "p_value",
            "reject_1",
            "reject_5",
            "reject_10",
        ],
        rows,
    )
}

/// Coefficient table followed by the summary statistics.
pub fn estimation_csv(est: &EstimationReport) -> Result<String> {
    let r = &est.fmols;
    let coef = r.coefficients.as_array();
    let opt = |v: Option<[f64; 4]>, k: usize| v.map_or(String::new(), |a| num(a[k]));
    let mut rows: Vec<Vec<String>> = ["v0", "v1", "v2", "sigma"]
        .iter()
        .enumerate()
        .map(|(k, name)| {
            vec![
                name.to_string(),
                num(coef[k]),
                num(r.standard_errors[k]),
                opt(r.t_statistics, k),
                opt(r.p_values, k),
            ]
        })
        .collect();
    let scalar = |name: &str, v: Option<f64>| {
        vec![
            name.to_string(),
            v.map_or(String::new(), num),
            String::new(),
            String::new(),
            String::new(),
        ]
    };
    rows.push(scalar("r_squared", Some(r.r_squared)));
    rows.push(scalar("lc", r.lc.map(|l| l.statistic)));
    rows.push(scalar("lc_p_lo", r.lc.map(|l| l.p_value_range[0])));
    rows.push(scalar("lc_p_hi", r.lc.map(|l| l.p_value_range[1])));
    rows.push(scalar("correlation", Some(est.correlation)));
    csv_string(
        &[
            "parameter",
            "estimate",
            "std_error",
            "t_statistic",
            "p_value",
        ],
        rows,
    )
}

pub fn delta_path_csv(path: &[DeltaPoint]) -> Result<String> {
    let rows = path
        .iter()
        .map(|p| vec![p.date.to_string(), num(p.ratio)])
        .collect();
    csv_string(&["date", "ratio"], rows)
}

pub fn montecarlo_csv(s: &MonteCarloSummary) -> Result<String> {
    let c = &s.coefficients;
    let mut rows: Vec<Vec<String>> = [("v0", c.v0), ("v1", c.v1), ("v2", c.v2), ("sigma", c.sigma)]
        .iter()
        .map(|(name, q)| {
            vec![
                name.to_string(),
                num(q.median),
                num(q.q25),
                num(q.q75),
                num(q.iqr),
            ]
        })
        .collect();
    for (name, v) in [
        ("lc_reject_10", s.lc_reject_10),
        ("lc_reject_5", s.lc_reject_5),
        ("adf_size", s.adf_size),
        ("adf_power", s.adf_power),
    ] {
        rows.push(vec![
            name.into(),
            num(v),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    csv_string(&["quantity", "median", "q25", "q75", "iqr"], rows)
}
