//! The `audit` subcommand: named check families with per-family flags.

use std::f64::consts::TAU;

use mlf_core::audit::suite::{self, FAILURE_FLOOR};
use mlf_core::audit::{verdict, Check, Tolerance};
use mlf_core::special::ComplexValue;

use crate::parse::GridSpec;
use crate::Failure;

/// Flags of `audit`, all optional; each family accepts a subset.
#[derive(Debug, Default, Clone, clap::Args)]
pub struct AuditFlags {
    /// orders, comma separated
    #[arg(long, value_delimiter = ',', value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// sample points, comma separated
    #[arg(long, value_delimiter = ',', value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
    /// λ as re or re,im; repeatable
    #[arg(long, value_parser = crate::parse::parse_complex, allow_hyphen_values = true)]
    pub lambda: Vec<ComplexValue>,
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub step: Option<f64>,
    /// start:stop:step
    #[arg(long, value_parser = crate::parse::parse_grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// period search window min:max
    #[arg(long, value_parser = crate::parse::parse_window, allow_hyphen_values = true)]
    pub window: Option<(f64, f64)>,
    /// shift used by period_shift
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// smallest residual accepted as a failure in the period check
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub floor: Option<f64>,
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub quad_tol: Option<f64>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long)]
    pub points: Option<usize>,
    /// replaces the tolerance value of every selected check
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// largest acceptable error bound of every selected check
    #[arg(long, value_parser = crate::parse::parse_number, allow_hyphen_values = true)]
    pub abs_tol: Option<f64>,
}

impl AuditFlags {
    fn provided(&self) -> Vec<&'static str> {
        let mut p = Vec::new();
        let mut add = |on: bool, name| {
            if on {
                p.push(name)
            }
        };
        add(self.alpha.is_some(), "alpha");
        add(self.x.is_some(), "x");
        add(!self.lambda.is_empty(), "lambda");
        add(self.xmax.is_some(), "xmax");
        add(self.step.is_some(), "step");
        add(self.grid.is_some(), "grid");
        add(self.window.is_some(), "window");
        add(self.m.is_some(), "m");
        add(self.floor.is_some(), "floor");
        add(self.quad_tol.is_some(), "quad-tol");
        add(self.kmax.is_some(), "kmax");
        add(self.terms.is_some(), "terms");
        add(self.points.is_some(), "points");
        add(self.tol.is_some(), "tol");
        p
    }
}

type Build = fn(&AuditFlags) -> mlf_core::Result<Vec<Check>>;

struct Family {
    name: &'static str,
    flags: &'static [&'static str],
    build: Build,
}

fn alphas(f: &AuditFlags, default: &[f64]) -> Vec<f64> {
    f.alpha.clone().unwrap_or_else(|| default.to_vec())
}

fn lambdas(f: &AuditFlags, default: &[ComplexValue]) -> Vec<ComplexValue> {
    if f.lambda.is_empty() {
        default.to_vec()
    } else {
        f.lambda.clone()
    }
}

const ONE: ComplexValue = ComplexValue::new(1.0, 0.0);

const FAMILIES: &[Family] = &[
    Family {
        name: "closed_form_exp",
        flags: &["xmax", "step"],
        build: |f| Ok(vec![suite::closed_form_exp(f.xmax.unwrap_or(10.0), f.step.unwrap_or(0.01))?]),
    },
    Family {
        name: "closed_form_cos",
        flags: &["xmax", "step"],
        build: |f| Ok(vec![suite::closed_form_cos(f.xmax.unwrap_or(10.0), f.step.unwrap_or(0.01))?]),
    },
    Family {
        name: "half_order",
        flags: &["xmax", "step"],
        build: |f| suite::half_order_closed_forms(f.xmax.unwrap_or(10.0), f.step.unwrap_or(0.01)),
    },
    Family {
        name: "dawson_quadrature",
        flags: &["xmax", "step"],
        build: |f| Ok(vec![suite::dawson_oracle(f.xmax.unwrap_or(10.0), f.step.unwrap_or(0.01))?]),
    },
    Family {
        name: "product",
        flags: &["alpha", "xmax", "step"],
        build: |f| {
            alphas(f, &[0.25, 0.5, 0.75, 1.0])
                .into_iter()
                .map(|a| suite::product_check(a, f.xmax.unwrap_or(6.0), f.step.unwrap_or(0.01)))
                .collect()
        },
    },
    Family {
        name: "product_point",
        flags: &[],
        build: |_| Ok(vec![suite::product_point()?]),
    },
    Family {
        name: "cauchy_odd",
        flags: &["alpha", "kmax"],
        build: |f| Ok(vec![suite::cauchy_odd(&alphas(f, &suite::twentieths()), f.kmax.unwrap_or(14))?]),
    },
    Family {
        name: "cauchy_a2",
        flags: &[],
        build: |_| suite::cauchy_a2_values(),
    },
    Family {
        name: "cauchy_a2_nonzero",
        flags: &["grid"],
        build: |f| {
            let g = f.grid.unwrap_or(GridSpec { start: 0.1, stop: 0.9, step: 0.01 });
            Ok(vec![suite::cauchy_a2_nonzero(g.start, g.stop, g.step)?])
        },
    },
    Family {
        name: "cauchy_even",
        flags: &["alpha", "kmax"],
        build: |f| Ok(vec![suite::cauchy_even(&alphas(f, &suite::tenths(1, 9)), f.kmax.unwrap_or(14))?]),
    },
    Family {
        name: "series_product",
        flags: &["alpha", "xmax", "step", "terms"],
        build: |f| {
            Ok(vec![suite::series_product(
                &alphas(f, &[0.25, 0.5, 0.75, 1.0]),
                f.xmax.unwrap_or(1.5),
                f.step.unwrap_or(0.25),
                f.terms.unwrap_or(30),
            )?])
        },
    },
    Family {
        name: "semigroup",
        flags: &["alpha", "lambda", "xmax", "step"],
        build: |f| {
            let mut out = Vec::new();
            for a in alphas(f, &[0.25, 0.75, 1.0]) {
                for l in lambdas(f, &[ONE]) {
                    out.extend(suite::semigroup_checks(a, l, f.xmax.unwrap_or(2.0), f.step.unwrap_or(0.02))?);
                }
            }
            Ok(out)
        },
    },
    Family {
        name: "inverse",
        flags: &["alpha", "x"],
        build: |f| {
            let mut out = Vec::new();
            let pairs: Vec<(f64, f64)> = match (&f.alpha, &f.x) {
                (None, None) => vec![(0.5, 1.0), (1.0, 2.0)],
                _ => {
                    let xs = f.x.clone().unwrap_or_else(|| vec![1.0]);
                    alphas(f, &[0.5, 1.0])
                        .into_iter()
                        .flat_map(|a| xs.iter().map(move |&x| (a, x)))
                        .collect()
                }
            };
            for (a, x) in pairs {
                out.extend(suite::inverse_checks(a, x)?);
            }
            Ok(out)
        },
    },
    Family {
        name: "period",
        flags: &["alpha", "window", "floor"],
        build: |f| {
            let mut out = Vec::new();
            for a in alphas(f, &[0.25, 0.5, 0.75, 1.0]) {
                let (lo, hi) = f.window.unwrap_or(if a == 1.0 {
                    (0.5, 10.0)
                } else if a == 0.5 {
                    (0.1, 50.0)
                } else {
                    (0.5, 50.0)
                });
                let floor = f.floor.unwrap_or(if a == 0.5 { 0.3 } else { FAILURE_FLOOR });
                out.extend(suite::period_checks(a, lo, hi, floor)?);
            }
            Ok(out)
        },
    },
    Family {
        name: "period_shift",
        flags: &["alpha", "m", "xmax", "step"],
        build: |f| {
            alphas(f, &[0.25, 0.75, 1.0])
                .into_iter()
                .map(|a| suite::period_shift(a, f.m.unwrap_or(TAU), f.xmax.unwrap_or(10.0), f.step.unwrap_or(0.01)))
                .collect()
        },
    },
    Family {
        name: "rules",
        flags: &["alpha", "x"],
        build: |f| {
            suite::rule_closed_form_checks(
                &alphas(f, &[0.25, 0.5, 0.75, 1.0]),
                &f.x.clone().unwrap_or_else(|| vec![0.5, 1.0, 2.0, 4.0]),
            )
        },
    },
    Family {
        name: "rule_order_one",
        flags: &["xmax", "points"],
        build: |f| Ok(vec![suite::rule_order_one(f.xmax.unwrap_or(5.0), f.points.unwrap_or(100))?]),
    },
    Family {
        name: "rule_failure",
        flags: &["alpha", "x"],
        build: |f| {
            let xs = f.x.clone().unwrap_or_else(|| vec![1.0]);
            let a = alphas(f, &suite::tenths(1, 9));
            xs.into_iter().map(|x| suite::rule_failure(&a, x)).collect()
        },
    },
    Family {
        name: "eigen_relation",
        flags: &["alpha", "lambda", "x", "terms"],
        build: |f| {
            let ls = lambdas(f, &[ONE, ComplexValue::new(-1.0, 0.0), ComplexValue::new(0.0, 1.0)]);
            let xs = f.x.clone().unwrap_or_else(|| vec![0.5, 1.0, 2.0]);
            alphas(f, &[0.3, 0.5, 0.7])
                .into_iter()
                .map(|a| suite::eigen_relation(a, &ls, &xs, f.terms.unwrap_or(100)))
                .collect()
        },
    },
    Family {
        name: "decomposition",
        flags: &["alpha", "grid", "quad-tol"],
        build: |f| {
            let g = f.grid.unwrap_or(GridSpec { start: 0.25, stop: 3.0, step: 0.05 });
            alphas(f, &[0.6, 0.75, 0.9])
                .into_iter()
                .map(|a| suite::decomposition(a, g.start, g.stop, g.step, f.quad_tol.unwrap_or(1e-9)))
                .collect()
        },
    },
    Family {
        name: "decomposition_constants",
        flags: &["alpha"],
        build: |f| Ok(vec![suite::decomposition_constants(&alphas(f, &[0.6, 0.75, 0.9]))?]),
    },
    Family {
        name: "monotonicity",
        flags: &["alpha", "xmax", "step"],
        build: |f| {
            alphas(f, &suite::tenths(1, 5))
                .into_iter()
                .map(|a| suite::monotonicity(a, f.xmax.unwrap_or(5.0), f.step.unwrap_or(0.01)))
                .collect()
        },
    },
    Family {
        name: "duplication",
        flags: &["alpha", "xmax", "step"],
        build: |f| {
            Ok(vec![suite::duplication(
                &alphas(f, &suite::tenths(1, 10)),
                f.xmax.unwrap_or(4.0),
                f.step.unwrap_or(0.01),
            )?])
        },
    },
    Family {
        name: "mlf_derivative",
        flags: &["alpha", "x"],
        build: |f| {
            Ok(vec![suite::mlf_derivative(
                &alphas(f, &[0.8, 1.0, 1.5]),
                &f.x.clone().unwrap_or_else(|| vec![0.5, 1.0, 2.0]),
            )?])
        },
    },
];

pub fn family_names() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.name).collect()
}

/// Runs one family, or the default suite when `name` is `None`.
pub fn run_checks(name: Option<&str>, flags: &AuditFlags) -> Result<Vec<Check>, Failure> {
    let provided = flags.provided();
    let mut checks = match name {
        None => {
            if let Some(extra) = provided.first() {
                return Err(Failure::Usage(format!(
                    "--{extra} needs a check name; the default suite takes no parameters"
                )));
            }
            suite::default_suite().map_err(Failure::from)?
        }
        Some(n) => {
            let fam = FAMILIES.iter().find(|f| f.name == n).ok_or_else(|| {
                Failure::Usage(format!("unknown check `{n}`; known: {}", family_names().join(", ")))
            })?;
            if let Some(bad) = provided.iter().find(|p| **p != "tol" && !fam.flags.contains(p)) {
                return Err(Failure::Usage(format!("--{bad} does not apply to `{n}`")));
            }
            (fam.build)(flags).map_err(Failure::from)?
        }
    };
    for c in &mut checks {
        if let Some(t) = flags.tol {
            c.tolerance = Tolerance { value: t, ..c.tolerance };
            c.params.insert("tol".into(), t.into());
            c.verdict = verdict(c.residual.sup, c.err_bound, c.tolerance);
        }
        if let Some(t) = flags.abs_tol {
            c.params.insert("abs_tol".into(), t.into());
        }
    }
    Ok(checks)
}

/// Checks whose error bound exceeds the requested accuracy.
pub fn unmet_accuracy(checks: &[Check], abs_tol: Option<f64>) -> Vec<&Check> {
    match abs_tol {
        Some(t) => checks.iter().filter(|c| !(c.err_bound <= t)).collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_unique() {
        let mut names = family_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), FAMILIES.len());
    }

    #[test]
    fn flags_are_checked_per_family() {
        let f = AuditFlags {
            kmax: Some(3),
            ..Default::default()
        };
        assert!(matches!(run_checks(Some("product"), &f), Err(Failure::Usage(_))));
        assert!(matches!(run_checks(None, &f), Err(Failure::Usage(_))));
        assert!(matches!(run_checks(Some("nope"), &AuditFlags::default()), Err(Failure::Usage(_))));
    }

    #[test]
    fn tolerance_override_recomputes_the_verdict() {
        let f = AuditFlags {
            tol: Some(1e-30),
            ..Default::default()
        };
        let cs = run_checks(Some("product_point"), &f).unwrap();
        assert_eq!(cs[0].tolerance.value, 1e-30);
        assert_ne!(cs[0].verdict, mlf_core::audit::Verdict::ConfirmsPaper);
    }
}
