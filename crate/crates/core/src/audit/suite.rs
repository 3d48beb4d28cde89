//! Check builders for every audited claim and the default suite.
//!
//! Each builder echoes its numeric inputs into the check's `params`. Claims
//! that an identity fails for α < 1 become `AtLeast` checks whose threshold
//! clears the error bound by [`SEPARATION_FACTOR`]; claims of equality
//! (including every identity at α = 1) become `AtMost` checks.
//!
//! Checks whose statistic is a worst case other than a maximum say so in the
//! `statistic` parameter.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::coefficients::{cauchy_coefficient, cauchy_coefficient_dd, series_product_check};
use super::grid::{product_residual_grid, semigroup_residual_grid, GridAxis};
use super::identities::{
    dawson_by_quadrature, inverse_relation_residual, monotonicity_audit, period_search,
    period_shift_residual,
};
use super::report::{params, Check, ParamValue, ResidualStats, Tolerance, SEPARATION_FACTOR};
use crate::decomposition::{
    g_component, printed_f_at_zero, reconcile_decomposition, GVariantSpec,
};
use crate::error::{domain, Result};
use crate::frac_calculus::{
    chain1_residual, chain2_residual, eigen_relation_residual, leibniz_residual, RuleResidual,
};
use crate::mittag_leffler::{cos_via_duplication, mlf_derivative_check, AlphaParam, MittagLeffler};
use crate::special::{dawson, gamma_pos, ComplexValue, EvalConfig, QuadratureConfig, UNIT_ROUNDOFF};

/// Smallest residual that counts as a failure of an identity: the level at
/// which the same identity is accepted at α = 1.
pub const FAILURE_FLOOR: f64 = 1e-10;
/// Relative error allowed for one gamma value in the closed-form checks.
const GAMMA_REL_ERR: f64 = 1e-14;

fn sqrt_pi() -> f64 {
    PI.sqrt()
}

fn is_order_one(alpha: f64) -> bool {
    alpha == 1.0
}

fn stats_of(samples: &[(Vec<f64>, f64)]) -> Result<ResidualStats> {
    ResidualStats::from_samples(samples.iter().map(|(at, v)| (at.as_slice(), *v)))
        .ok_or_else(|| domain("check", "no samples"))
}

/// Smallest value among samples, reported through the `sup` slot.
fn min_stats(samples: &[(Vec<f64>, f64)]) -> Result<ResidualStats> {
    let (at, min) = samples
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| domain("check", "no samples"))?;
    let mean = samples.iter().map(|s| s.1).sum::<f64>() / samples.len() as f64;
    Ok(ResidualStats {
        sup: *min,
        mean,
        argmax: at.clone(),
    })
}

fn axis_points(x_max: f64, step: f64) -> Result<Vec<f64>> {
    Ok(GridAxis::new(0.0, x_max, step)?.points())
}

/// sup |E_1(x) − e^x| / (1 + e^x) over [0, x_max].
pub fn closed_form_exp(x_max: f64, step: f64) -> Result<Check> {
    let ml = MittagLeffler::new(AlphaParam::new(1.0)?);
    let cfg = EvalConfig::default();
    let rows = axis_points(x_max, step)?
        .into_par_iter()
        .map(|x| -> Result<(Vec<f64>, f64, f64)> {
            let e = ml.eval_real(x, &cfg)?;
            let exact = x.exp();
            let scale = 1.0 + exact;
            let err = if e.converged { (e.err_bound + 2.0 * UNIT_ROUNDOFF * exact) / scale } else { f64::INFINITY };
            Ok((vec![x], (e.value.re - exact).abs() / scale, err))
        })
        .collect::<Result<Vec<_>>>()?;
    finish_grid(
        "closed_form_exp",
        params([("x_max", x_max.into()), ("step", step.into()), ("order", 1.0.into())]),
        rows,
        Tolerance::at_most(1e-12),
    )
}

/// sup |E_2(−x²) − cos x| over [0, x_max].
pub fn closed_form_cos(x_max: f64, step: f64) -> Result<Check> {
    let ml = MittagLeffler::new(AlphaParam::new(2.0)?);
    let cfg = EvalConfig::default();
    let rows = axis_points(x_max, step)?
        .into_par_iter()
        .map(|x| -> Result<(Vec<f64>, f64, f64)> {
            let e = ml.eval_real(-x * x, &cfg)?;
            let err = if e.converged { e.err_bound + 2.0 * UNIT_ROUNDOFF } else { f64::INFINITY };
            Ok((vec![x], (e.value.re - x.cos()).abs(), err))
        })
        .collect::<Result<Vec<_>>>()?;
    finish_grid(
        "closed_form_cos",
        params([("x_max", x_max.into()), ("step", step.into()), ("order", 2.0.into())]),
        rows,
        Tolerance::at_most(1e-10),
    )
}

fn finish_grid(
    name: &str,
    p: super::report::Params,
    rows: Vec<(Vec<f64>, f64, f64)>,
    tol: Tolerance,
) -> Result<Check> {
    let err = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let samples: Vec<(Vec<f64>, f64)> = rows.into_iter().map(|(at, v, _)| (at, v)).collect();
    Ok(Check::new(name, p, stats_of(&samples)?, err, tol))
}

/// cos_{1/2}(√x) against e^{−x} and sin_{1/2}(√x) against (2/√π)·D(√x).
pub fn half_order_closed_forms(x_max: f64, step: f64) -> Result<Vec<Check>> {
    let ml = MittagLeffler::new(AlphaParam::trig(0.5)?);
    let cfg = EvalConfig::default();
    let rows = axis_points(x_max, step)?
        .into_par_iter()
        .map(|x| -> Result<(f64, f64, f64, f64)> {
            let pair = ml.frac_trig(x, &cfg)?;
            let err = if pair.converged { pair.err_bound } else { f64::INFINITY };
            let cos_r = (pair.cos_part - (-x).exp()).abs();
            let sin_ref = 2.0 / sqrt_pi() * dawson(x.sqrt())?;
            let sin_r = (pair.sin_part - sin_ref).abs();
            Ok((x, cos_r, sin_r, err + 4.0 * UNIT_ROUNDOFF))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = || params([("alpha", 0.5.into()), ("x_max", x_max.into()), ("step", step.into())]);
    let cos_rows = rows.iter().map(|r| (vec![r.0], r.1, r.3)).collect();
    let sin_rows = rows.iter().map(|r| (vec![r.0], r.2, r.3 + 1e-15)).collect();
    Ok(vec![
        finish_grid("half_order_cos", p(), cos_rows, Tolerance::at_most(1e-10))?,
        finish_grid("half_order_sin", p(), sin_rows, Tolerance::at_most(1e-10))?,
    ])
}

/// Series Dawson function against direct quadrature of its integral.
pub fn dawson_oracle(x_max: f64, step: f64) -> Result<Check> {
    let rows = axis_points(x_max, step)?
        .into_par_iter()
        .map(|x| -> Result<(Vec<f64>, f64, f64)> {
            let (q, q_err) = dawson_by_quadrature(x)?;
            Ok((vec![x], (dawson(x)? - q).abs(), q_err))
        })
        .collect::<Result<Vec<_>>>()?;
    finish_grid(
        "dawson_quadrature",
        params([("x_max", x_max.into()), ("step", step.into())]),
        rows,
        Tolerance::at_most(1e-13),
    )
}

/// |p(x, α) − 1| with p = cos_α² + sin_α² over [0, x_max].
pub fn product_check(alpha: f64, x_max: f64, step: f64) -> Result<Check> {
    let g = product_residual_grid(alpha, x_max, step)?;
    let p = params([("alpha", alpha.into()), ("x_max", x_max.into()), ("step", step.into())]);
    Ok(if is_order_one(alpha) {
        Check::new("product", p, g.stats(), g.uniform_err_bound, Tolerance::at_most(1e-10))
    } else {
        let tol = Tolerance::separated(g.uniform_err_bound, FAILURE_FLOOR);
        Check::new("product", p, g.certified_stats(), g.uniform_err_bound, tol)
    })
}

/// |p(1, 1/2) − 1| against 1 − e^{−2} − (2/√π·D(1))², with D by quadrature.
pub fn product_point() -> Result<Check> {
    let g = product_residual_grid(0.5, 1.0, 0.5)?;
    let (d, d_err) = dawson_by_quadrature(1.0)?;
    let s = 2.0 / sqrt_pi() * d;
    let closed = 1.0 - (-2.0f64).exp() - s * s;
    let r = (g.values[2] - closed).abs();
    let err = g.err_bounds[2] + 4.0 / sqrt_pi() * s * d_err + 4.0 * UNIT_ROUNDOFF;
    Ok(Check::new(
        "product_point",
        params([("alpha", 0.5.into()), ("x", 1.0.into()), ("closed_form", closed.into())]),
        ResidualStats::single(r, vec![1.0]),
        err,
        Tolerance::at_most(1e-9),
    ))
}

/// Every A_{2k+1}(α) for k ≤ k_max over the given orders.
pub fn cauchy_odd(alphas: &[f64], k_max: usize) -> Result<Check> {
    let mut rows = Vec::new();
    for &a in alphas {
        for k in 0..=k_max {
            let n = 2 * k + 1;
            let (_, err) = cauchy_coefficient_dd(n, a)?;
            let v = cauchy_coefficient(n, a)?.value.abs();
            rows.push((vec![a, n as f64], v, err + 1e-16));
        }
    }
    finish_grid(
        "cauchy_odd",
        params([("alphas", alphas.to_vec().into()), ("k_max", k_max.into())]),
        rows,
        Tolerance::at_most(1e-13),
    )
}

/// A_2(1/2) = 2 − 4/π and A_2(1) = 0.
pub fn cauchy_a2_values() -> Result<Vec<Check>> {
    let half = cauchy_coefficient(2, 0.5)?.value;
    let (_, half_err) = cauchy_coefficient_dd(2, 0.5)?;
    let one = cauchy_coefficient(2, 1.0)?.value;
    let (_, one_err) = cauchy_coefficient_dd(2, 1.0)?;
    let rounding = 8.0 * UNIT_ROUNDOFF;
    Ok(vec![
        Check::new(
            "cauchy_a2_half",
            params([("alpha", 0.5.into()), ("closed_form", (2.0 - 4.0 / PI).into())]),
            ResidualStats::single((half - (2.0 - 4.0 / PI)).abs(), vec![0.5]),
            half_err + rounding,
            Tolerance::at_most(1e-12),
        ),
        Check::new(
            "cauchy_a2_one",
            params([("alpha", 1.0.into())]),
            ResidualStats::single(one.abs(), vec![1.0]),
            one_err + rounding,
            Tolerance::at_most(1e-14),
        ),
    ])
}

/// min |A_2(α)| over [alpha_min, alpha_max].
pub fn cauchy_a2_nonzero(alpha_min: f64, alpha_max: f64, step: f64) -> Result<Check> {
    let axis = GridAxis::new(alpha_min, alpha_max, step)?;
    let mut rows = Vec::new();
    let mut err = 0.0f64;
    for a in axis.points() {
        let (v, e) = cauchy_coefficient_dd(2, a)?;
        err = err.max(e);
        rows.push((vec![a], v.to_f64().abs()));
    }
    Ok(Check::new(
        "cauchy_a2_nonzero",
        params([
            ("alpha_min", alpha_min.into()),
            ("alpha_max", alpha_max.into()),
            ("step", step.into()),
            ("statistic", "min".into()),
        ]),
        min_stats(&rows)?,
        err,
        Tolerance::separated(err, 1e-3),
    ))
}

/// Even A_{2k}, 1 ≤ k ≤ k_max, in double-double. The statistic is the
/// smallest |A_{2k}| divided by its own error bound, so the error bound of
/// the check is 1 in those units.
pub fn cauchy_even(alphas: &[f64], k_max: usize) -> Result<Check> {
    let mut rows = Vec::new();
    for &a in alphas {
        for k in 1..=k_max {
            let (v, e) = cauchy_coefficient_dd(2 * k, a)?;
            rows.push((vec![a, (2 * k) as f64], v.to_f64().abs() / e));
        }
    }
    Ok(Check::new(
        "cauchy_even",
        params([
            ("alphas", alphas.to_vec().into()),
            ("k_max", k_max.into()),
            ("statistic", "min |A_2k| / err_bound".into()),
        ]),
        min_stats(&rows)?,
        1.0,
        Tolerance::at_least(SEPARATION_FACTOR),
    ))
}

/// Truncated Cauchy-product series against cos_α² + sin_α²; the residual is
/// the amount by which the difference exceeds its bound.
pub fn series_product(alphas: &[f64], x_max: f64, step: f64, m_terms: usize) -> Result<Check> {
    let mut rows = Vec::new();
    let mut raw = 0.0f64;
    for &a in alphas {
        for x in axis_points(x_max, step)? {
            let r = series_product_check(a, x, m_terms)?;
            raw = raw.max(r.residual);
            rows.push((vec![a, x], (r.residual - r.bound).max(0.0)));
        }
    }
    Ok(Check::new(
        "series_product",
        params([
            ("alphas", alphas.to_vec().into()),
            ("x_max", x_max.into()),
            ("step", step.into()),
            ("terms", m_terms.into()),
            ("statistic", "excess over bound".into()),
            ("max_difference", raw.into()),
        ]),
        stats_of(&rows)?,
        0.0,
        Tolerance::at_most(0.0),
    ))
}

/// E_α(λ(x+y)^α) − E_α(λx^α)E_α(λy^α) over [0, xy_max]², and the same
/// residual restricted to the lines x = 0 and y = 0.
pub fn semigroup_checks(alpha: f64, lambda: ComplexValue, xy_max: f64, step: f64) -> Result<Vec<Check>> {
    let g = semigroup_residual_grid(alpha, lambda, xy_max, step)?;
    let p = || {
        params([
            ("alpha", alpha.into()),
            ("lambda_re", lambda.re.into()),
            ("lambda_im", lambda.im.into()),
            ("xy_max", xy_max.into()),
            ("step", step.into()),
        ])
    };
    let main = if is_order_one(alpha) {
        Check::new("semigroup", p(), g.stats(), g.uniform_err_bound, Tolerance::at_most(1e-10))
    } else {
        let tol = Tolerance::separated(g.uniform_err_bound, FAILURE_FLOOR);
        Check::new("semigroup", p(), g.certified_stats(), g.uniform_err_bound, tol)
    };
    let m = g.axes[1].len();
    let axis_rows: Vec<(Vec<f64>, f64)> = (0..g.len())
        .filter(|i| i % m == 0 || i / m == 0)
        .map(|i| (g.coords(i), g.values[i]))
        .collect();
    let axis = Check::new("semigroup_axis", p(), stats_of(&axis_rows)?, 0.0, Tolerance::at_most(1e-12));
    Ok(vec![main, axis])
}

/// Both inverse-relation residuals at one point.
pub fn inverse_checks(alpha: f64, x: f64) -> Result<Vec<Check>> {
    let r = inverse_relation_residual(alpha, x)?;
    let p = || params([("alpha", alpha.into()), ("x", x.into())]);
    let tol = |err: f64| {
        if is_order_one(alpha) {
            Tolerance::at_most(1e-12)
        } else {
            Tolerance::separated(err, FAILURE_FLOOR)
        }
    };
    Ok(vec![
        Check::new("inverse_product", p(), ResidualStats::single(r.r1, vec![x]), r.err1, tol(r.err1)),
        Check::new("inverse_branch", p(), ResidualStats::single(r.r2, vec![x]), r.err2, tol(r.err2)),
    ])
}

/// Global minimum of |E_α(iM^α) − 1| over [m_min, m_max]. For α < 1 the
/// minimum must be separated from zero and reach `floor`; at α = 1 a second
/// check locates the period 2π.
pub fn period_checks(alpha: f64, m_min: f64, m_max: f64, floor: f64) -> Result<Vec<Check>> {
    let r = period_search(alpha, m_min, m_max)?;
    let p = || {
        let mut p = params([
            ("alpha", alpha.into()),
            ("m_min", m_min.into()),
            ("m_max", m_max.into()),
            ("searched_max", r.search_window[1].into()),
            ("scan_step", super::identities::PERIOD_SCAN_STEP.into()),
            ("local_minima", r.local_minima.into()),
        ]);
        if !is_order_one(alpha) {
            p.insert("floor".into(), floor.into());
        }
        p
    };
    let stats = ResidualStats::single(r.residual_star, vec![r.m_star]);
    if is_order_one(alpha) {
        let loc = (r.m_star - TAU).abs();
        Ok(vec![
            Check::new("period", p(), stats, r.err_bound, Tolerance::at_most(1e-10)),
            Check::new(
                "period_location",
                p(),
                ResidualStats::single(loc, vec![r.m_star]),
                super::identities::PERIOD_SCAN_STEP * 1e-6,
                Tolerance::at_most(1e-6),
            ),
        ])
    } else {
        let tol = Tolerance::separated(r.err_bound, floor);
        Ok(vec![Check::new("period", p(), stats, r.err_bound, tol)])
    }
}

/// sup over x ∈ [0, x_max] of |E_α(i(x+M)^α) − E_α(ix^α)|, the shift form
/// of the period claim.
pub fn period_shift(alpha: f64, m: f64, x_max: f64, step: f64) -> Result<Check> {
    let (sup, at, err) = period_shift_residual(alpha, m, x_max, step)?;
    let tol = if is_order_one(alpha) {
        Tolerance::at_most(1e-10)
    } else {
        Tolerance::separated(err, FAILURE_FLOOR)
    };
    Ok(Check::new(
        "period_shift",
        params([("alpha", alpha.into()), ("m", m.into()), ("x_max", x_max.into()), ("step", step.into())]),
        ResidualStats::single(sup, vec![at]),
        err,
        tol,
    ))
}

type RuleFn = fn(AlphaParam, f64) -> Result<RuleResidual>;

const RULES: [(&str, RuleFn); 3] = [
    ("leibniz", leibniz_residual),
    ("chain1", chain1_residual),
    ("chain2", chain2_residual),
];

/// Closed forms of both sides: Γ(2−α) on the left, Γ(3/2−α) on the right.
fn rule_closed_form(rule: &str, a: f64, x: f64) -> Result<(f64, f64)> {
    let s = x.powf(1.0 - a);
    let lhs = s / gamma_pos(2.0 - a)?;
    let rhs = sqrt_pi() * s / gamma_pos(1.5 - a)?;
    Ok(match rule {
        "chain2" => (lhs, 2f64.powf(a - 1.0) * rhs),
        _ => (lhs, rhs),
    })
}

/// Both sides of each rule against their gamma closed forms.
pub fn rule_closed_form_checks(alphas: &[f64], xs: &[f64]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, rule) in RULES {
        let mut rows = Vec::new();
        for &a in alphas {
            for &x in xs {
                let r = rule(AlphaParam::trig(a)?, x)?;
                let (lhs, rhs) = rule_closed_form(name, a, x)?;
                let d = (r.lhs - lhs).abs().max((r.rhs - rhs).abs());
                let err = 2.0 * GAMMA_REL_ERR * lhs.abs().max(rhs.abs()) + 8.0 * UNIT_ROUNDOFF;
                rows.push((vec![a, x], d, err));
            }
        }
        out.push(finish_grid(
            &format!("{name}_closed_form"),
            params([("alphas", alphas.to_vec().into()), ("xs", xs.to_vec().into())]),
            rows,
            Tolerance::at_most(1e-12),
        )?);
    }
    Ok(out)
}

/// Every rule at α = 1 on x = x_max/n, 2x_max/n, …, x_max.
pub fn rule_order_one(x_max: f64, n: usize) -> Result<Check> {
    let one = AlphaParam::trig(1.0)?;
    let mut rows = Vec::new();
    for (idx, (_, rule)) in RULES.iter().enumerate() {
        for i in 1..=n {
            let x = x_max * i as f64 / n as f64;
            let r = rule(one, x)?;
            rows.push((vec![idx as f64, x], r.residual.abs(), 4.0 * UNIT_ROUNDOFF * r.lhs.abs()));
        }
    }
    finish_grid(
        "rule_order_one",
        params([("x_max", x_max.into()), ("points", n.into()), ("rules", "leibniz, chain1, chain2".into())]),
        rows,
        Tolerance::at_most(1e-12),
    )
}

/// Smallest |residual| of the three rules over α < 1 at one x.
pub fn rule_failure(alphas: &[f64], x: f64) -> Result<Check> {
    let mut rows = Vec::new();
    let mut err = 0.0f64;
    for (idx, (_, rule)) in RULES.iter().enumerate() {
        for &a in alphas {
            let r = rule(AlphaParam::trig(a)?, x)?;
            err = err.max(2.0 * GAMMA_REL_ERR * (r.lhs.abs() + r.rhs.abs()));
            rows.push((vec![idx as f64, a], r.residual.abs()));
        }
    }
    Ok(Check::new(
        "rule_failure",
        params([
            ("alphas", alphas.to_vec().into()),
            ("x", x.into()),
            ("rules", "leibniz, chain1, chain2".into()),
            ("statistic", "min".into()),
        ]),
        min_stats(&rows)?,
        err,
        Tolerance::separated(err, 1e-2),
    ))
}

/// Termwise D^α of the truncated series of E_α(λx^α) against λE_α(λx^α);
/// the residual is the amount by which the difference exceeds its bound.
pub fn eigen_relation(alpha: f64, lambdas: &[ComplexValue], xs: &[f64], terms: usize) -> Result<Check> {
    let ap = AlphaParam::trig(alpha)?;
    let mut rows = Vec::new();
    let (mut raw, mut bound) = (0.0f64, 0.0f64);
    for &l in lambdas {
        for &x in xs {
            let r = eigen_relation_residual(ap, l, x, terms)?;
            raw = raw.max(r.residual);
            bound = bound.max(r.bound);
            rows.push((vec![l.re, l.im, x], (r.residual - r.bound).max(0.0)));
        }
    }
    let lam: Vec<f64> = lambdas.iter().flat_map(|l| [l.re, l.im]).collect();
    Ok(Check::new(
        "eigen_relation",
        params([
            ("alpha", alpha.into()),
            ("lambdas_re_im", lam.into()),
            ("xs", xs.to_vec().into()),
            ("terms", terms.into()),
            ("statistic", "excess over bound".into()),
            ("max_difference", raw.into()),
            ("max_bound", bound.into()),
            ("assumption", "the derivative maps constants to zero".into()),
        ]),
        stats_of(&rows)?,
        0.0,
        Tolerance::at_most(0.0),
    ))
}

/// Best reading of the f + g decomposition against the series, with the
/// literal reading and the sign and trend of f recorded.
pub fn decomposition(alpha: f64, x_min: f64, x_max: f64, step: f64, quad_tol: f64) -> Result<Check> {
    let ap = AlphaParam::new(alpha)?;
    let grid = GridAxis::new(x_min, x_max, step)?.points();
    let q = QuadratureConfig {
        abs_tol: quad_tol,
        rel_tol: quad_tol,
        ..QuadratureConfig::default()
    };
    let rec = reconcile_decomposition(ap, &grid, &q)?;
    let best = rec.best_variant;
    let fs: Vec<f64> = rec
        .records
        .iter()
        .map(|r| r.f_value(best.arg_power, best.kernel).value)
        .collect();
    let sign = if fs.iter().all(|&f| f < 0.0) {
        "negative"
    } else if fs.iter().all(|&f| f > 0.0) {
        "positive"
    } else {
        "mixed"
    };
    let trend = if fs.windows(2).all(|w| w[1] > w[0]) {
        "increasing"
    } else if fs.windows(2).all(|w| w[1] < w[0]) {
        "decreasing"
    } else {
        "mixed"
    };
    let at = rec
        .variants
        .iter()
        .find(|v| v.variant == best)
        .map(|v| v.argmax)
        .unwrap_or(f64::NAN);
    let p = params([
        ("alpha", alpha.into()),
        ("x_min", x_min.into()),
        ("x_max", x_max.into()),
        ("step", step.into()),
        ("quad_tol", quad_tol.into()),
        ("best_variant", best.to_string().into()),
        ("literal_residual", rec.literal_residual.into()),
        ("f_sign", sign.into()),
        ("f_trend", trend.into()),
        ("f_at_zero", crate::decomposition::f_at_zero(ap, best.kernel)?.into()),
        ("printed_f_at_zero", printed_f_at_zero(ap)?.into()),
    ]);
    Ok(Check::new(
        "decomposition",
        p,
        ResidualStats::single(rec.best_residual, vec![at]),
        rec.max_quad_err + rec.max_series_err,
        Tolerance::at_most(1e-6),
    ))
}

/// The printed constants f(0) = 1 − 2/α and g(0) = 2/α sum to one.
pub fn decomposition_constants(alphas: &[f64]) -> Result<Check> {
    let mut rows = Vec::new();
    for &a in alphas {
        let ap = AlphaParam::new(a)?;
        let s = printed_f_at_zero(ap)? + g_component(ap, 0.0, GVariantSpec::PAPER_LITERAL)?;
        rows.push((vec![a], (s - 1.0).abs(), 8.0 * UNIT_ROUNDOFF / a));
    }
    finish_grid(
        "decomposition_constants",
        params([("alphas", alphas.to_vec().into()), ("variant", GVariantSpec::PAPER_LITERAL.to_string().into())]),
        rows,
        Tolerance::at_most(1e-14),
    )
}

/// Largest first difference of E_{2α}(−x^{2α}) on [0, x_max].
pub fn monotonicity(alpha: f64, x_max: f64, step: f64) -> Result<Check> {
    let r = monotonicity_audit(alpha, x_max, step)?;
    Ok(Check::new(
        "monotonicity",
        params([
            ("alpha", alpha.into()),
            ("x_max", x_max.into()),
            ("step", step.into()),
            ("statistic", "max first difference".into()),
        ]),
        ResidualStats::single(r.max_increase, vec![r.argmax]),
        r.err_bound,
        Tolerance::at_most(super::identities::MONOTONE_TOL),
    ))
}

/// cos_α(x^α) from the even/odd split against E_{2α}(−x^{2α}); the
/// residual is the excess over the combined bounds plus 1e−13.
pub fn duplication(alphas: &[f64], x_max: f64, step: f64) -> Result<Check> {
    let cfg = EvalConfig::default();
    let mut rows = Vec::new();
    let mut raw = 0.0f64;
    for &a in alphas {
        let ap = AlphaParam::trig(a)?;
        let ml = MittagLeffler::new(ap);
        let part = axis_points(x_max, step)?
            .into_par_iter()
            .map(|x| -> Result<(Vec<f64>, f64, f64)> {
                let t = ml.frac_trig(x, &cfg)?;
                let d = cos_via_duplication(ap, x, &cfg)?;
                let diff = (t.cos_part - d.value.re).abs();
                let allowed = if t.converged && d.converged { t.err_bound + d.err_bound + 1e-13 } else { 0.0 };
                Ok((vec![a, x], diff, (diff - allowed).max(0.0)))
            })
            .collect::<Result<Vec<_>>>()?;
        for (at, diff, excess) in part {
            raw = raw.max(diff);
            rows.push((at, excess));
        }
    }
    Ok(Check::new(
        "duplication",
        params([
            ("alphas", alphas.to_vec().into()),
            ("x_max", x_max.into()),
            ("step", step.into()),
            ("statistic", "excess over bound".into()),
            ("max_difference", raw.into()),
        ]),
        stats_of(&rows)?,
        0.0,
        Tolerance::at_most(0.0),
    ))
}

/// Termwise derivative of E_α(−x) against a central difference.
pub fn mlf_derivative(alphas: &[f64], xs: &[f64]) -> Result<Check> {
    let mut rows = Vec::new();
    for &a in alphas {
        for &x in xs {
            rows.push((vec![a, x], mlf_derivative_check(AlphaParam::new(a)?, x)?));
        }
    }
    // truncation of the central difference, h²·max|f'''|/6 with |f'''| ≤ 10
    let h = crate::mittag_leffler::DERIVATIVE_CHECK_STEP;
    let err = 10.0 * h * h / 6.0;
    Ok(Check::new(
        "mlf_derivative",
        params([("alphas", alphas.to_vec().into()), ("xs", xs.to_vec().into()), ("h", h.into())]),
        stats_of(&rows)?,
        err,
        Tolerance::at_most(1e-7),
    ))
}

/// α = 0.1, 0.2, … up to `stop` by tenths.
pub fn tenths(start: usize, stop: usize) -> Vec<f64> {
    (start..=stop).map(|i| i as f64 / 10.0).collect()
}

/// α = 0.05, 0.10, …, 1.00.
pub fn twentieths() -> Vec<f64> {
    (1..=20).map(|i| i as f64 / 20.0).collect()
}

/// Every check with its default configuration.
pub fn default_suite() -> Result<Vec<Check>> {
    let mut out = vec![
        closed_form_exp(10.0, 0.01)?,
        closed_form_cos(10.0, 0.01)?,
        dawson_oracle(10.0, 0.01)?,
        product_point()?,
        cauchy_odd(&twentieths(), 14)?,
        cauchy_a2_nonzero(0.1, 0.9, 0.01)?,
        cauchy_even(&tenths(1, 9), 14)?,
        series_product(&[0.25, 0.5, 0.75, 1.0], 1.5, 0.25, 30)?,
        rule_order_one(5.0, 100)?,
        rule_failure(&tenths(1, 9), 1.0)?,
        decomposition_constants(&[0.6, 0.75, 0.9])?,
        duplication(&tenths(1, 10), 4.0, 0.01)?,
        mlf_derivative(&[0.8, 1.0, 1.5], &[0.5, 1.0, 2.0])?,
    ];
    out.extend(half_order_closed_forms(10.0, 0.01)?);
    out.extend(cauchy_a2_values()?);
    out.extend(rule_closed_form_checks(&[0.25, 0.5, 0.75, 1.0], &[0.5, 1.0, 2.0, 4.0])?);
    for a in [0.25, 0.5, 0.75, 1.0] {
        out.push(product_check(a, 6.0, 0.01)?);
    }
    let one = ComplexValue::new(1.0, 0.0);
    for a in [0.25, 0.75, 1.0] {
        out.extend(semigroup_checks(a, one, 2.0, 0.02)?);
    }
    out.extend(inverse_checks(0.5, 1.0)?);
    out.extend(inverse_checks(1.0, 2.0)?);
    out.extend(period_checks(0.25, 0.5, 50.0, FAILURE_FLOOR)?);
    out.extend(period_checks(0.5, 0.1, 50.0, 0.3)?);
    out.extend(period_checks(0.75, 0.5, 50.0, FAILURE_FLOOR)?);
    out.extend(period_checks(1.0, 0.5, 10.0, FAILURE_FLOOR)?);
    for a in [0.25, 0.75, 1.0] {
        out.push(period_shift(a, TAU, 10.0, 0.01)?);
    }
    let lambdas = [one, ComplexValue::new(-1.0, 0.0), ComplexValue::new(0.0, 1.0)];
    for a in [0.3, 0.5, 0.7] {
        out.push(eigen_relation(a, &lambdas, &[0.5, 1.0, 2.0], 100)?);
    }
    for a in [0.6, 0.75, 0.9] {
        out.push(decomposition(a, 0.25, 3.0, 0.05, 1e-9)?);
    }
    for a in tenths(1, 5) {
        out.push(monotonicity(a, 5.0, 0.01)?);
    }
    Ok(out)
}

/// The value a check echoes for `key`, if numeric.
pub fn param_number(c: &Check, key: &str) -> Option<f64> {
    match c.params.get(key)? {
        ParamValue::Number(v) => Some(*v),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Verdict;

    #[test]
    fn product_expectation_follows_order() {
        let c = product_check(1.0, 6.0, 0.01).unwrap();
        assert_eq!(c.verdict, Verdict::ConfirmsPaper);
        assert_eq!(c.tolerance, Tolerance::at_most(1e-10));
        let c = product_check(0.5, 6.0, 0.1).unwrap();
        assert_eq!(c.verdict, Verdict::ConfirmsPaper);
        assert!(c.residual.sup >= SEPARATION_FACTOR * c.err_bound);
    }

    #[test]
    fn period_floor_and_location() {
        let cs = period_checks(1.0, 0.5, 10.0, FAILURE_FLOOR).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.verdict == Verdict::ConfirmsPaper));
        assert!(param_number(&cs[0], "floor").is_none());
    }

    #[test]
    fn rule_checks_confirm() {
        for c in rule_closed_form_checks(&[0.25, 0.5, 1.0], &[1.0, 4.0]).unwrap() {
            assert_eq!(c.verdict, Verdict::ConfirmsPaper, "{c:?}");
        }
        let f = rule_failure(&tenths(1, 9), 1.0).unwrap();
        assert_eq!(f.verdict, Verdict::ConfirmsPaper);
        assert!(f.residual.sup >= 1e-2);
    }

    #[test]
    fn inverse_checks_at_both_orders() {
        for c in inverse_checks(0.5, 1.0).unwrap().into_iter().chain(inverse_checks(1.0, 2.0).unwrap()) {
            assert_eq!(c.verdict, Verdict::ConfirmsPaper, "{c:?}");
        }
    }
}
