//! Acceptance criteria, one printed PASS/FAIL line each. Run with
//! `cargo test -p mlf-audit --test acceptance -- --nocapture` to see them.

use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::process::Command;

use mlf_core::audit::suite::{
    cauchy_a2_nonzero, cauchy_a2_values, cauchy_odd, closed_form_cos, closed_form_exp,
    dawson_oracle, decomposition, decomposition_constants, eigen_relation,
    half_order_closed_forms, monotonicity, param_number, period_checks, product_check,
    product_point, rule_closed_form_checks, rule_order_one, semigroup_checks, tenths, twentieths,
};
use mlf_core::audit::{cauchy_coefficient, period_search, Check, Verdict};
use mlf_core::frac_calculus::{chain2_residual, eigen_relation_residual, leibniz_residual};
use mlf_core::mittag_leffler::AlphaParam;
use mlf_core::special::ComplexValue;
use serde_json::Value;

type Outcome = Result<String, String>;

/// Reference minima of |E_α(iM^α) − 1| on [0.5, 50], computed at 50 digits.
const PERIOD_ORACLE: [(f64, f64); 2] = [(0.25, 0.709_375_521_484_439_77), (0.75, 0.619_738_807_031_244_34)];

fn at_most(c: &Check, limit: f64) -> Outcome {
    if c.residual.sup <= limit {
        Ok(format!("{} {:.3e} <= {limit:e}", c.name, c.residual.sup))
    } else {
        Err(format!("{} {:e} > {limit:e} at {:?}", c.name, c.residual.sup, c.residual.argmax))
    }
}

fn separated(c: &Check) -> Outcome {
    let need = 1e3 * c.err_bound;
    if c.residual.sup >= need && c.residual.sup > 0.0 {
        Ok(format!("{} {:.3e} >= 1e3 x {:.3e}", c.name, c.residual.sup, c.err_bound))
    } else {
        Err(format!("{} {:e} < 1e3 x {:e}", c.name, c.residual.sup, c.err_bound))
    }
}

fn confirmed(c: &Check) -> Outcome {
    if c.verdict == Verdict::ConfirmsPaper {
        Ok(String::new())
    } else {
        Err(format!("{} verdict {}", c.name, c.verdict.as_str()))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut notes = Vec::new();
    for p in parts {
        let n = p?;
        if !n.is_empty() {
            notes.push(n);
        }
    }
    Ok(notes.join("; "))
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn closed_forms() -> Outcome {
    let exp = closed_form_exp(10.0, 0.01).map_err(e)?;
    let cos = closed_form_cos(10.0, 0.01).map_err(e)?;
    all(vec![at_most(&exp, 1e-12), at_most(&cos, 1e-10)])
}

fn half_order() -> Outcome {
    let mut parts: Vec<Outcome> = half_order_closed_forms(10.0, 0.01)
        .map_err(e)?
        .iter()
        .map(|c| at_most(c, 1e-10))
        .collect();
    let d = dawson_oracle(10.0, 0.01).map_err(e)?;
    parts.push(confirmed(&d).and(at_most(&d, 1e-13)));
    all(parts)
}

fn unit_product() -> Outcome {
    let mut parts = Vec::new();
    for a in [0.25, 0.5, 0.75] {
        parts.push(separated(&product_check(a, 6.0, 0.01).map_err(e)?));
    }
    parts.push(at_most(&product_check(1.0, 6.0, 0.01).map_err(e)?, 1e-10));
    parts.push(at_most(&product_point().map_err(e)?, 1e-9));
    all(parts)
}

fn cauchy() -> Outcome {
    let mut alphas = tenths(1, 10);
    alphas.extend(twentieths());
    let odd = cauchy_odd(&alphas, 14).map_err(e)?;
    let a2 = cauchy_a2_values().map_err(e)?;
    let half = cauchy_coefficient(2, 0.5).map_err(e)?.value;
    let direct = (half - (2.0 - 4.0 / PI)).abs();
    let one = cauchy_coefficient(2, 1.0).map_err(e)?.value.abs();
    let nonzero = cauchy_a2_nonzero(0.1, 0.9, 0.01).map_err(e)?;
    let floor = if nonzero.residual.sup >= 1e-3 {
        Ok(format!("min |A_2| {:.4} >= 1e-3", nonzero.residual.sup))
    } else {
        Err(format!("min |A_2| {:e} < 1e-3", nonzero.residual.sup))
    };
    let direct = if direct <= 1e-12 && one <= 1e-14 {
        Ok(format!("A_2(1/2) off by {direct:.1e}, |A_2(1)| = {one:.1e}"))
    } else {
        Err(format!("A_2(1/2) off by {direct:e}, |A_2(1)| = {one:e}"))
    };
    all(vec![
        at_most(&odd, 1e-13),
        at_most(&a2[0], 1e-12),
        at_most(&a2[1], 1e-14),
        direct,
        floor,
    ])
}

fn no_period() -> Outcome {
    let mut parts = Vec::new();
    let half = period_search(0.5, 0.1, 50.0).map_err(e)?;
    parts.push(if half.residual_star >= 0.3 {
        Ok(format!("α=0.5 r* = {:.6}", half.residual_star))
    } else {
        Err(format!("α=0.5 r* = {} below 0.3", half.residual_star))
    });
    for (a, want) in PERIOD_ORACLE {
        let r = period_search(a, 0.5, 50.0).map_err(e)?;
        let ok = r.residual_star > 0.0 && (r.residual_star - want).abs() <= 1e-10;
        parts.push(if ok {
            Ok(format!("α={a} r* = {:.12}", r.residual_star))
        } else {
            Err(format!("α={a} r* = {} vs oracle {want}", r.residual_star))
        });
    }
    let one = period_search(1.0, 0.5, 10.0).map_err(e)?;
    parts.push(if (one.m_star - TAU).abs() <= 1e-6 && one.residual_star <= 1e-10 {
        Ok(format!("α=1 m* − 2π = {:.1e}", one.m_star - TAU))
    } else {
        Err(format!("α=1 m* = {}, r* = {}", one.m_star, one.residual_star))
    });
    for c in period_checks(1.0, 0.5, 10.0, 0.0).map_err(e)? {
        parts.push(confirmed(&c));
    }
    all(parts)
}

fn rules() -> Outcome {
    let mut parts: Vec<Outcome> = rule_closed_form_checks(&tenths(1, 10), &[0.5, 1.0, 2.0, 3.0])
        .map_err(e)?
        .iter()
        .map(|c| at_most(c, 1e-12))
        .collect();
    parts.push(at_most(&rule_order_one(5.0, 100).map_err(e)?, 1e-12));
    let half = AlphaParam::new(0.5).map_err(e)?;
    let l = leibniz_residual(half, 1.0).map_err(e)?;
    let c2 = chain2_residual(half, 1.0).map_err(e)?;
    let worst = [
        (l.lhs - 2.0 / PI.sqrt()).abs(),
        (l.rhs - PI.sqrt()).abs(),
        (c2.rhs - (PI / 2.0).sqrt()).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    parts.push(if worst <= 1e-12 {
        Ok(format!("α=1/2, x=1 sides within {worst:.1e}"))
    } else {
        Err(format!("α=1/2, x=1 sides off by {worst:e}"))
    });
    all(parts)
}

fn semigroup() -> Outcome {
    let one = ComplexValue::new(1.0, 0.0);
    let mut parts = Vec::new();
    for a in [0.25, 0.75, 1.0] {
        for c in semigroup_checks(a, one, 2.0, 0.02).map_err(e)? {
            parts.push(match (c.name.as_str(), a == 1.0) {
                ("semigroup_axis", _) => at_most(&c, 1e-12),
                (_, true) => at_most(&c, 1e-10),
                (_, false) => separated(&c),
            });
        }
    }
    all(parts)
}

fn decompositions() -> Outcome {
    let mut parts = Vec::new();
    for a in [0.6, 0.75, 0.9] {
        let c = decomposition(a, 0.25, 3.0, 0.05, 1e-9).map_err(e)?;
        let literal = param_number(&c, "literal_residual");
        parts.push(at_most(&c, 1e-6));
        parts.push(match literal {
            Some(v) if v.is_finite() => Ok(format!("literal {v:.3e}")),
            other => Err(format!("literal residual not reported: {other:?}")),
        });
    }
    parts.push(at_most(&decomposition_constants(&[0.6, 0.75, 0.9]).map_err(e)?, 1e-14));
    all(parts)
}

fn monotone() -> Outcome {
    let mut parts = Vec::new();
    for a in tenths(1, 5) {
        let c = monotonicity(a, 5.0, 0.01).map_err(e)?;
        parts.push(if c.residual.sup <= 1e-12 {
            Ok(String::new())
        } else {
            Err(format!("α={a} rises by {:e}", c.residual.sup))
        });
    }
    all(parts).map(|_| "every first difference <= 1e-12".into())
}

fn eigen() -> Outcome {
    let lambdas = [
        ComplexValue::new(1.0, 0.0),
        ComplexValue::new(-1.0, 0.0),
        ComplexValue::new(0.0, 1.0),
    ];
    let xs = [0.5, 1.0, 2.0];
    let mut parts = Vec::new();
    for a in [0.3, 0.5, 0.7] {
        let ap = AlphaParam::new(a).map_err(e)?;
        for l in lambdas {
            for x in xs {
                let r = eigen_relation_residual(ap, l, x, 100).map_err(e)?;
                if r.residual > r.bound {
                    parts.push(Err(format!("α={a}, λ={l}, x={x}: {:e} > {:e}", r.residual, r.bound)));
                }
            }
        }
        parts.push(confirmed(&eigen_relation(a, &lambdas, &xs, 100).map_err(e)?));
    }
    all(parts).map(|_| "27 cases within their bound".into())
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_mlf-audit"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(e)?;
    if status.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?} exited {:?}: {}",
            status.status.code(),
            String::from_utf8_lossy(&status.stderr)
        ))
    }
}

fn number(v: &Value) -> bool {
    // non-finite floats serialize as null or a string
    v.is_number() || v.is_null() || v.as_str().is_some_and(|s| ["inf", "-inf", "NaN"].contains(&s))
}

/// Hand-written validator for the report schema.
fn validate_report(doc: &Value) -> Result<usize, String> {
    let obj = doc.as_object().ok_or("report is not an object")?;
    for key in ["schema_version", "generated_at", "checks"] {
        if !obj.contains_key(key) {
            return Err(format!("missing {key}"));
        }
    }
    obj["schema_version"].as_u64().ok_or("schema_version is not an integer")?;
    let stamp = obj["generated_at"].as_str().ok_or("generated_at is not a string")?;
    if !stamp.contains('T') || stamp.len() < 20 {
        return Err(format!("generated_at {stamp:?} is not RFC 3339"));
    }
    let checks = obj["checks"].as_array().ok_or("checks is not an array")?;
    if checks.is_empty() {
        return Err("no checks".into());
    }
    for c in checks {
        let name = c["name"].as_str().ok_or("check without a name")?;
        let bad = |what: &str| format!("{name}: {what}");
        c["params"].as_object().ok_or_else(|| bad("params"))?;
        let r = c["residual"].as_object().ok_or_else(|| bad("residual"))?;
        if !["sup", "mean"].iter().all(|k| r.get(*k).is_some_and(number)) {
            return Err(bad("residual sup/mean"));
        }
        let argmax = r.get("argmax").and_then(Value::as_array).ok_or_else(|| bad("argmax"))?;
        if !argmax.iter().all(number) {
            return Err(bad("argmax entries"));
        }
        if !number(&c["err_bound"]) {
            return Err(bad("err_bound"));
        }
        let t = c["tolerance"].as_object().ok_or_else(|| bad("tolerance"))?;
        if !matches!(t.get("expect").and_then(Value::as_str), Some("at_most" | "at_least"))
            || !t.get("value").is_some_and(number)
        {
            return Err(bad("tolerance fields"));
        }
        if !matches!(
            c["verdict"].as_str(),
            Some("CONFIRMS_PAPER" | "CONTRADICTS_PAPER" | "INCONCLUSIVE")
        ) {
            return Err(bad("verdict"));
        }
    }
    Ok(checks.len())
}

fn cli_regression() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let mut notes = Vec::new();
    for fig in ["fig1", "fig2", "fig3"] {
        let mut runs = Vec::new();
        for run in ["a", "b"] {
            let out = format!("{fig}_{run}.csv");
            run_cli(dir.path(), &["figure", fig, "--out", &out])?;
            runs.push(std::fs::read(dir.path().join(out)).map_err(e)?);
        }
        if runs[0] != runs[1] {
            return Err(format!("{fig} CSV differs between runs"));
        }
        notes.push(format!("{fig} {} bytes", runs[0].len()));
    }
    run_cli(dir.path(), &["audit", "--out", "report.json"])?;
    let text = std::fs::read_to_string(dir.path().join("report.json")).map_err(e)?;
    let doc: Value = serde_json::from_str(&text).map_err(e)?;
    let n = validate_report(&doc)?;
    notes.push(format!("audit exit 0, {n} checks validate"));
    Ok(notes.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("closed-form agreement", closed_forms),
        ("half-order closed forms", half_order),
        ("unit product", unit_product),
        ("cauchy coefficients", cauchy),
        ("no period", no_period),
        ("rule counterexamples", rules),
        ("semigroup failure", semigroup),
        ("decomposition reconciliation", decompositions),
        ("monotonicity", monotone),
        ("eigen relation", eigen),
        ("cli regression", cli_regression),
    ];
    let mut failed = Vec::new();
    for (i, (label, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS {:>2} {label}: {note}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {label}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}

#[test]
fn validator_rejects_broken_reports() {
    let good = serde_json::json!({
        "schema_version": 1,
        "generated_at": "2026-01-01T00:00:00Z",
        "checks": [{
            "name": "c",
            "params": {},
            "residual": {"sup": 0.0, "mean": 0.0, "argmax": [1.0]},
            "err_bound": 1e-16,
            "tolerance": {"expect": "at_most", "value": 1e-12},
            "verdict": "CONFIRMS_PAPER"
        }]
    });
    assert_eq!(validate_report(&good), Ok(1));
    let mut bad = good.clone();
    bad["checks"][0]["verdict"] = "MAYBE".into();
    assert!(validate_report(&bad).is_err());
    let mut bad = good.clone();
    bad["checks"][0]["residual"].as_object_mut().unwrap().remove("mean");
    assert!(validate_report(&bad).is_err());
    let mut bad = good;
    bad.as_object_mut().unwrap().remove("generated_at");
    assert!(validate_report(&bad).is_err());
}
