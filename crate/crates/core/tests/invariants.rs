use std::f64::consts::PI;

use mlf_core::audit::suite::{product_check, rule_failure, semigroup_checks, tenths};
use mlf_core::audit::{build_report, inverse_relation_residual};
use mlf_core::decomposition::{
    g_component, reconcile_decomposition, AngleParse, ArgPower, ExpSign, GVariantSpec, Prefactor,
};
use mlf_core::frac_calculus::{
    chain1_residual, chain2_residual, frac_deriv_monomial, leibniz_residual,
};
use mlf_core::mittag_leffler::{eval_mlf, frac_trig, AlphaParam, MittagLeffler};
use mlf_core::special::{gamma_pos, ComplexValue, EvalConfig, QuadratureConfig};
use proptest::prelude::*;

fn alpha(a: f64) -> AlphaParam {
    AlphaParam::new(a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recursion(x in 0.1f64..40.0) {
        let lhs = gamma_pos(x + 1.0).unwrap();
        let rhs = x * gamma_pos(x).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() <= 1e-13, "x = {x}");
    }

    #[test]
    fn conjugate_symmetry(a in 0.05f64..=2.0, r in 0.0f64..8.0, theta in 0.0f64..std::f64::consts::TAU) {
        let z = ComplexValue::from_polar(r, theta);
        let cfg = EvalConfig::default();
        let up = eval_mlf(alpha(a), z, &cfg);
        prop_assume!(up.is_ok());
        let up = up.unwrap();
        let down = eval_mlf(alpha(a), z.conj(), &cfg).unwrap();
        let scale = 1.0f64.max(up.value.norm());
        prop_assert!((up.value.conj() - down.value).norm() <= 1e-14 * scale);
    }
}

#[test]
fn unit_order_on_the_imaginary_axis() {
    let ml = MittagLeffler::new(alpha(1.0));
    let cfg = EvalConfig::default();
    for i in 0..=1000 {
        let x = i as f64 * 0.01;
        let e = ml.eval(ComplexValue::new(0.0, x), &cfg).unwrap();
        let want = ComplexValue::new(x.cos(), x.sin());
        assert!((e.value - want).norm() <= 1e-12, "x = {x}");
    }
}

#[test]
fn pythagorean_bridge() {
    let cfg = EvalConfig::default();
    for a in [0.2, 0.5, 0.8, 1.0] {
        let ml = MittagLeffler::new(alpha(a));
        for i in 0..=30 {
            let x = i as f64 * 0.2;
            let pair = frac_trig(alpha(a), x, &cfg).unwrap();
            let (p, _) = pair.modulus_squared();
            let y = x.powf(a);
            let prod = ml.eval(ComplexValue::new(0.0, y), &cfg).unwrap().value
                * ml.eval(ComplexValue::new(0.0, -y), &cfg).unwrap().value;
            assert!((p - prod.re).abs() <= 1e-11, "α = {a}, x = {x}");
            assert!(prod.im.abs() <= 1e-12, "α = {a}, x = {x}");
        }
    }
}

#[test]
fn every_identity_holds_at_unit_order() {
    let one = ComplexValue::new(1.0, 0.0);
    assert!(product_check(1.0, 6.0, 0.05).unwrap().residual.sup <= 1e-10);
    for c in semigroup_checks(1.0, one, 2.0, 0.1).unwrap() {
        assert!(c.residual.sup <= 1e-10, "{}", c.name);
    }
    for x in [0.5, 1.0, 3.0, 7.0] {
        let r = inverse_relation_residual(1.0, x).unwrap();
        assert!(r.r1 <= 1e-10 && r.r2 <= 1e-10, "x = {x}");
    }
}

#[test]
fn rules_collapse_at_unit_order() {
    let one = alpha(1.0);
    for i in 1..=100 {
        let x = 0.05 * i as f64;
        for rule in [leibniz_residual, chain1_residual, chain2_residual] {
            assert!(rule(one, x).unwrap().residual.abs() <= 1e-12, "x = {x}");
        }
    }
}

#[test]
fn rules_fail_away_from_unit_order() {
    for a in tenths(1, 9) {
        for rule in [leibniz_residual, chain1_residual, chain2_residual] {
            assert!(rule(alpha(a), 1.0).unwrap().residual.abs() >= 1e-2, "α = {a}");
        }
    }
    assert!(rule_failure(&tenths(1, 9), 1.0).unwrap().residual.sup >= 1e-2);
}

#[test]
fn rule_residuals_scale_with_x() {
    for a in [0.2, 0.5, 0.9] {
        for rule in [leibniz_residual, chain1_residual, chain2_residual] {
            let base = rule(alpha(a), 1.0).unwrap().residual;
            for x in [0.3, 2.0, 4.5] {
                let r = rule(alpha(a), x).unwrap().residual;
                let want = base * x.powf(1.0 - a);
                assert!((r / want - 1.0).abs() <= 1e-12, "α = {a}, x = {x}");
            }
        }
    }
}

#[test]
fn unit_order_derivative_coefficient_is_the_exponent() {
    for i in 1..100 {
        let p = 0.1 * i as f64;
        let t = frac_deriv_monomial(p, alpha(1.0)).unwrap();
        assert!((t.coeff - p).abs() <= 1e-13, "p = {p}: {}", t.coeff);
    }
}

#[test]
fn chain_rule_sides_differ_by_power_of_two() {
    for a in tenths(1, 10) {
        let r1 = chain1_residual(alpha(a), 1.7).unwrap().rhs;
        let r2 = chain2_residual(alpha(a), 1.7).unwrap().rhs;
        assert!((r2 - 2f64.powf(a - 1.0) * r1).abs() <= 1e-13, "α = {a}");
    }
}

#[test]
fn oscillatory_part_is_bounded_by_its_envelope() {
    for a in [0.55f64, 0.75, 0.95] {
        for v in GVariantSpec::all() {
            let pref = match v.prefactor {
                Prefactor::TwoOverAlpha => 2.0 / a,
                Prefactor::OneOverAlpha => 1.0 / a,
            };
            assert_eq!(g_component(alpha(a), 0.0, v).unwrap(), pref);
            let sign = match v.exp_sign {
                ExpSign::StandardPositive => 1.0,
                ExpSign::AsPrintedNegative => -1.0,
            };
            let theta = match v.angle {
                AngleParse::PiOver2alpha => PI / (2.0 * a),
                AngleParse::PiAlphaOver2 => PI * a / 2.0,
            };
            for x in [0.3f64, 1.0, 2.5] {
                let arg = match v.arg_power {
                    ArgPower::X => x,
                    ArgPower::XTo2alpha => x.powf(2.0 * a),
                };
                let envelope = pref * (sign * arg * theta.cos()).exp();
                let g = g_component(alpha(a), x, v).unwrap();
                assert!(g.abs() <= envelope * (1.0 + 1e-15), "α = {a}, {v}, x = {x}");
            }
        }
    }
}

#[test]
fn decomposition_stays_below_one() {
    let grid: Vec<f64> = (1..=30).map(|i| 0.1 * i as f64).collect();
    let mut best = None;
    for a in [0.55, 0.7, 0.85] {
        let rec = reconcile_decomposition(alpha(a), &grid, &QuadratureConfig::default()).unwrap();
        let b = rec.best_variant;
        for r in &rec.records {
            let idx = GVariantSpec::all().iter().position(|v| *v == b).unwrap();
            let sum = r.f_value(b.arg_power, b.kernel).value + r.g_values[idx];
            assert!(sum < 1.0, "α = {a}, x = {}", r.x);
            assert!(r.series_value < 1.0);
        }
        assert!(*best.get_or_insert(b) == b, "best reading differs at α = {a}");
    }
}

#[test]
fn reports_are_deterministic() {
    let one = ComplexValue::new(1.0, 0.0);
    let run = || {
        let mut checks = semigroup_checks(0.75, one, 2.0, 0.1).unwrap();
        checks.push(product_check(0.25, 6.0, 0.05).unwrap());
        build_report(checks, "fixed".into()).unwrap().to_json()
    };
    assert_eq!(run(), run());
}
