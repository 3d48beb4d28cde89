use mlf_core::audit::suite::default_suite;
use mlf_core::audit::{build_report, Verdict};

#[test]
fn default_suite_confirms_every_claim() {
    let checks = default_suite().unwrap();
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| c.verdict != Verdict::ConfirmsPaper)
        .map(|c| format!("{} {:?} sup {:e} err {:e} tol {:?}", c.name, c.params, c.residual.sup, c.err_bound, c.tolerance))
        .collect();
    assert!(failing.is_empty(), "{}", failing.join("\n"));
    let report = build_report(checks, "t".into()).unwrap();
    assert!(report.checks.len() >= 8);
}
