use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mlf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlf-audit"))
        .args(args)
        .current_dir(dir)
        .env("MLF_AUDIT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&mlf(d, &["eval", "--alpha", "1", "--z", "1"])), 0);
    assert_eq!(code(&mlf(d, &["eval", "--alpha", "1", "--z", "1", "--abs-tol", "1e-30"])), 2);
    assert_eq!(code(&mlf(d, &["eval", "--alpha", "-0.5", "--z", "1"])), 1);
    assert_eq!(code(&mlf(d, &["eval", "--alpha", "x", "--z", "1"])), 1);
    assert_eq!(code(&mlf(d, &["audit", "product", "--kmax", "3"])), 1);
    assert_eq!(code(&mlf(d, &["audit", "no_such_check"])), 1);
    assert_eq!(code(&mlf(d, &["audit", "product", "--alpha", "1", "--xmax", "2", "--abs-tol", "1e-30"])), 2);
    assert_eq!(code(&mlf(d, &["figure", "fig3", "--grid", "0.5:2:0.5"])), 1);
    assert_eq!(code(&mlf(d, &["figure", "fig3", "--grid", "0:1:0.5", "--lambda", "-1"])), 0);
    assert_eq!(code(&mlf(d, &["eval", "--alpha", "0.5", "--z", "-1,-2"])), 0);
}

#[test]
fn eval_reports_value_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = mlf(dir.path(), &["eval", "--alpha", "1", "--x", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cos = v["cos"].as_f64().unwrap();
    assert!((cos - 1f64.cos()).abs() <= 1e-14, "{v}");
    let out = mlf(dir.path(), &["eval", "--alpha", "1", "--z", "1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"][0].as_f64().unwrap() - std::f64::consts::E).abs() <= 1e-14, "{v}");
    assert!(v["err_bound"].as_f64().unwrap() <= 1e-14);
}

#[test]
fn audit_echoes_flags_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["audit", "semigroup", "--alpha", "0.25,1", "--xmax", "1", "--step", "0.1"];
    let read = |name: &str| {
        let mut a = args.to_vec();
        a.extend(["--out", name]);
        assert_eq!(code(&mlf(d, &a)), 0);
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(d.join(name)).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("generated_at");
        v
    };
    let first = read("a.json");
    assert_eq!(first, read("b.json"));
    let checks = first["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    for c in checks {
        assert_eq!(c["params"]["xy_max"].as_f64(), Some(1.0), "{c}");
        assert_eq!(c["verdict"], "CONFIRMS_PAPER");
    }
}

#[test]
fn tolerance_override_changes_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = mlf(d, &["audit", "product", "--alpha", "0.5", "--xmax", "2", "--tol", "10", "--out", "r.json"]);
    assert_eq!(code(&out), 2);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    let c = &v["checks"][0];
    assert_eq!(c["tolerance"]["value"].as_f64(), Some(10.0));
    assert_ne!(c["verdict"], "CONFIRMS_PAPER");
}

#[test]
fn markdown_has_one_row_per_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = mlf(d, &["audit", "rules", "--format", "md", "--out", "r.md"]);
    assert_eq!(code(&out), 0);
    let md = std::fs::read_to_string(d.join("r.md")).unwrap();
    let rows = md.lines().filter(|l| l.starts_with("| ") && l.contains("CONFIRMS_PAPER")).count();
    assert_eq!(rows, 3);
    assert!(md.contains("| name | params | sup | mean | argmax | err_bound | tolerance | verdict |"));
}

#[test]
fn report_converts_json_to_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&mlf(d, &["audit", "cauchy_a2", "--out", "r.json"])), 0);
    let out = mlf(d, &["report", "--input", "r.json"]);
    assert_eq!(code(&out), 0);
    let md = String::from_utf8(out.stdout).unwrap();
    assert_eq!(md.matches("CONFIRMS_PAPER").count(), 2);
    // I/O failures while emitting reports exit 2
    assert_eq!(code(&mlf(d, &["report", "--input", "missing.json"])), 2);
}

#[test]
fn semigroup_figure_shape() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = mlf(d, &["figure", "fig3", "--grid", "0:1:0.1", "--lambda", "0,1", "--svg", "f.svg"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(d.join("fig3.csv")).unwrap();
    let mut lines = csv.split("\r\n").filter(|l| !l.is_empty());
    assert_eq!(lines.next(), Some("x,y,alpha=0.25,alpha=0.25_im,alpha=0.75,alpha=0.75_im"));
    assert_eq!(lines.count(), 11 * 11);
    assert!(std::fs::read_to_string(d.join("f.svg")).unwrap().ends_with("</svg>\n"));
}

#[test]
fn thread_variable_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mlf-audit"))
        .args(["eval", "--alpha", "1", "--z", "1"])
        .current_dir(dir.path())
        .env("MLF_AUDIT_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}
