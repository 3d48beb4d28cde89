//! Check records, the three-way verdict and the serialized audit report.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A decisive failure must exceed its error bound by this factor.
pub const SEPARATION_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Text(String),
    List(Vec<f64>),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        Self::Number(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        Self::Number(v as f64)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl From<Vec<f64>> for ParamValue {
    fn from(v: Vec<f64>) -> Self {
        Self::List(v)
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Builds a [`Params`] map from `(key, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, ParamValue); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ConfirmsPaper,
    ContradictsPaper,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConfirmsPaper => "CONFIRMS_PAPER",
            Verdict::ContradictsPaper => "CONTRADICTS_PAPER",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Which side of the tolerance agrees with the claim being audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// the claim is an equality; the residual must stay at or below the value
    AtMost,
    /// the claim is a failure; the residual must reach the value
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub expect: Expect,
    pub value: f64,
}

impl Tolerance {
    pub fn at_most(value: f64) -> Self {
        Self {
            expect: Expect::AtMost,
            value,
        }
    }

    pub fn at_least(value: f64) -> Self {
        Self {
            expect: Expect::AtLeast,
            value,
        }
    }

    /// Threshold for a claimed failure: the residual must clear the error
    /// bound by [`SEPARATION_FACTOR`] and be at least `floor`.
    pub fn separated(err_bound: f64, floor: f64) -> Self {
        Self::at_least((SEPARATION_FACTOR * err_bound).max(floor))
    }
}

/// The three-way decision. `Inconclusive` is returned only when the error
/// bound exceeds the residual.
pub fn verdict(residual: f64, err_bound: f64, tol: Tolerance) -> Verdict {
    let uncertain = !(err_bound <= residual);
    match tol.expect {
        Expect::AtMost => {
            if residual <= tol.value {
                Verdict::ConfirmsPaper
            } else if uncertain {
                Verdict::Inconclusive
            } else {
                Verdict::ContradictsPaper
            }
        }
        Expect::AtLeast => {
            if uncertain {
                Verdict::Inconclusive
            } else if residual >= tol.value {
                Verdict::ConfirmsPaper
            } else {
                Verdict::ContradictsPaper
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualStats {
    pub sup: f64,
    pub mean: f64,
    pub argmax: Vec<f64>,
}

impl ResidualStats {
    pub fn single(value: f64, at: Vec<f64>) -> Self {
        Self {
            sup: value,
            mean: value,
            argmax: at,
        }
    }

    /// Statistics of `(coordinates, value)` samples; `None` when empty.
    pub fn from_samples<'a>(samples: impl IntoIterator<Item = (&'a [f64], f64)>) -> Option<Self> {
        let mut n = 0usize;
        let mut total = 0.0;
        let mut best: Option<(&[f64], f64)> = None;
        for (at, v) in samples {
            n += 1;
            total += v;
            if best.is_none_or(|(_, b)| v > b || v.is_nan()) {
                best = Some((at, v));
            }
        }
        best.map(|(at, sup)| Self {
            sup,
            mean: total / n as f64,
            argmax: at.to_vec(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: Params,
    pub residual: ResidualStats,
    pub err_bound: f64,
    pub tolerance: Tolerance,
    pub verdict: Verdict,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        params: Params,
        residual: ResidualStats,
        err_bound: f64,
        tolerance: Tolerance,
    ) -> Self {
        let verdict = verdict(residual.sup, err_bound, tolerance);
        Self {
            name: name.into(),
            params,
            residual,
            err_bound,
            tolerance,
            verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub generated_at: String,
    pub checks: Vec<Check>,
}

fn params_key(p: &Params) -> String {
    serde_json::to_string(p).expect("params serialize")
}

/// Orders the checks by name, then by serialized parameters.
pub fn build_report(mut checks: Vec<Check>, generated_at: String) -> Result<AuditReport> {
    if checks.is_empty() {
        return Err(Error::Invalid("an audit report needs at least one check".into()));
    }
    checks.sort_by(|a, b| match a.name.cmp(&b.name) {
        Ordering::Equal => params_key(&a.params).cmp(&params_key(&b.params)),
        other => other,
    });
    Ok(AuditReport {
        schema_version: SCHEMA_VERSION,
        generated_at,
        checks,
    })
}

fn fmt_param(v: &ParamValue) -> String {
    match v {
        ParamValue::Number(x) => format!("{x}"),
        ParamValue::Text(s) => s.clone(),
        ParamValue::List(xs) => {
            let inner: Vec<String> = xs.iter().map(|x| format!("{x}")).collect();
            format!("[{}]", inner.join(", "))
        }
    }
}

impl AuditReport {
    pub fn all_confirm(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::ConfirmsPaper)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed report: {e}")))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Audit report\n");
        let _ = writeln!(out, "schema_version: {}  ", self.schema_version);
        let _ = writeln!(out, "generated_at: {}\n", self.generated_at);
        out.push_str("| name | params | sup | mean | argmax | err_bound | tolerance | verdict |\n");
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let params: Vec<String> =
                c.params.iter().map(|(k, v)| format!("{k}={}", fmt_param(v))).collect();
            let argmax: Vec<String> = c.residual.argmax.iter().map(|x| format!("{x}")).collect();
            let tol = match c.tolerance.expect {
                Expect::AtMost => format!("≤ {:e}", c.tolerance.value),
                Expect::AtLeast => format!("≥ {:e}", c.tolerance.value),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {:e} | {:e} | ({}) | {:e} | {} | {} |",
                c.name,
                params.join("; ").replace('|', "\\|"),
                c.residual.sup,
                c.residual.mean,
                argmax.join(", "),
                c.err_bound,
                tol,
                c.verdict.as_str()
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rules() {
        let tight = Tolerance::at_most(1e-10);
        assert_eq!(verdict(1e-12, 1e-11, tight), Verdict::ConfirmsPaper);
        assert_eq!(verdict(1e-3, 1e-2, tight), Verdict::Inconclusive);
        assert_eq!(verdict(1e-3, 1e-14, tight), Verdict::ContradictsPaper);
        let fails = Tolerance::at_least(1e-6);
        assert_eq!(verdict(0.5, 1e-15, fails), Verdict::ConfirmsPaper);
        assert_eq!(verdict(0.5, 1.0, fails), Verdict::Inconclusive);
        assert_eq!(verdict(1e-9, 1e-15, fails), Verdict::ContradictsPaper);
        assert_eq!(verdict(f64::NAN, 0.0, fails), Verdict::Inconclusive);
    }

    #[test]
    fn separated_tolerance() {
        assert_eq!(Tolerance::separated(1e-15, 1e-12).value, 1e-12);
        assert!((Tolerance::separated(1e-9, 1e-12).value - 1e-6).abs() < 1e-20);
    }

    fn check(name: &str, a: f64) -> Check {
        Check::new(
            name,
            params([("alpha", a.into())]),
            ResidualStats::single(0.1, vec![a]),
            1e-16,
            Tolerance::at_least(1e-3),
        )
    }

    #[test]
    fn report_is_sorted_and_rejects_empty() {
        assert!(build_report(vec![], "t".into()).is_err());
        let r = build_report(
            vec![check("semigroup", 0.75), check("product", 0.5), check("semigroup", 0.25)],
            "t".into(),
        )
        .unwrap();
        let order: Vec<(&str, f64)> = r
            .checks
            .iter()
            .map(|c| (c.name.as_str(), c.residual.argmax[0]))
            .collect();
        assert_eq!(order, [("product", 0.5), ("semigroup", 0.25), ("semigroup", 0.75)]);
        assert!(r.all_confirm());
    }

    #[test]
    fn single_check_round_trips() {
        let r = build_report(vec![check("product", 0.5)], "2026-01-01T00:00:00Z".into()).unwrap();
        let json = r.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["checks"][0]["verdict"], "CONFIRMS_PAPER");
        assert_eq!(v["checks"][0]["tolerance"]["expect"], "at_least");
        assert_eq!(AuditReport::from_json(&json).unwrap(), r);
        let md = r.to_markdown();
        assert_eq!(md.lines().filter(|l| l.starts_with("| product")).count(), 1);
    }

    #[test]
    fn stats_from_samples() {
        let pts = [[0.0], [1.0], [2.0]];
        let vals = [0.1, 0.5, 0.3];
        let s = ResidualStats::from_samples(pts.iter().map(|p| &p[..]).zip(vals)).unwrap();
        assert_eq!(s.sup, 0.5);
        assert_eq!(s.argmax, vec![1.0]);
        assert!((s.mean - 0.3).abs() < 1e-15);
        assert!(ResidualStats::from_samples(std::iter::empty()).is_none());
    }
}
