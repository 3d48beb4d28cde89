//! Kummer's confluent hypergeometric function and the Dawson integral.

use super::series::{CompensatedSum, EvalConfig, SeriesEval, ComplexValue, UNIT_ROUNDOFF};
use crate::error::{domain, Result};

/// Largest |x| accepted by [`kummer_phi`].
pub const KUMMER_MAX_ABS_X: f64 = 50.0;

/// Φ(a, b; x) = Σ_k (a)_k x^k / ((b)_k k!) for real arguments, b > 0.
///
/// Terms come from the hypergeometric recurrence. Once `k ≥ −a` every later
/// term ratio is bounded by `|x|·max(1, (a+k)/(b+k))/(k+1)`, which gives a
/// rigorous geometric tail. Terminating series (a a nonpositive integer) are
/// summed exactly.
pub fn kummer_phi(a: f64, b: f64, x: f64, cfg: &EvalConfig) -> Result<SeriesEval> {
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(domain("kummer_phi", "arguments must be finite"));
    }
    if b <= 0.0 {
        return Err(domain("kummer_phi", format!("b = {b} must be > 0")));
    }
    if x.abs() > KUMMER_MAX_ABS_X {
        return Err(domain("kummer_phi", format!("|x| = {} exceeds {KUMMER_MAX_ABS_X}", x.abs())));
    }
    cfg.validate()?;
    if x == 0.0 {
        return Ok(SeriesEval::exact(ComplexValue::new(1.0, 0.0)));
    }

    let u = UNIT_ROUNDOFF;
    let mut acc = CompensatedSum::default();
    let mut term = 1.0f64;
    let mut abs_sum = 0.0;
    let mut term_err = 0.0;
    for k in 0..cfg.max_terms {
        acc.add_real(term);
        let mag = term.abs();
        abs_sum += mag;
        // each recurrence step costs four roundings
        term_err += mag * 4.0 * k as f64 * u;
        let kf = k as f64;
        let factor = (a + kf) * x / ((b + kf) * (kf + 1.0));
        if factor == 0.0 {
            return Ok(finish(acc.real(), 0.0, term_err, abs_sum, k + 1));
        }
        if a + kf >= 0.0 {
            let growth = if a + kf > b + kf { (a + kf) / (b + kf) } else { 1.0 };
            let rho = x.abs() * growth / (kf + 1.0);
            if rho <= 0.5 {
                let tail = mag * rho / (1.0 - rho);
                if tail <= cfg.abs_tol {
                    return Ok(finish(acc.real(), tail, term_err, abs_sum, k + 1));
                }
            }
        }
        term *= factor;
        if !term.is_finite() {
            break;
        }
    }
    Ok(SeriesEval {
        value: ComplexValue::new(acc.real(), 0.0),
        err_bound: f64::INFINITY,
        terms_used: cfg.max_terms,
        converged: false,
    })
}

fn finish(value: f64, tail: f64, term_err: f64, abs_sum: f64, n: usize) -> SeriesEval {
    let u = UNIT_ROUNDOFF;
    let sum_err = 2.0 * u * value.abs() + 4.0 * n as f64 * u * u * abs_sum;
    SeriesEval {
        value: ComplexValue::new(value, 0.0),
        err_bound: tail + term_err + sum_err,
        terms_used: n,
        converged: true,
    }
}

/// Dawson's integral D(x) = e^{−x²} ∫_0^x e^{t²} dt for x ≥ 0.
///
/// Below x = 6 this uses D(x) = x·e^{−x²}·Φ(1/2, 3/2; x²), a series of
/// positive terms; above, the asymptotic expansion
/// D(x) ~ (1/2x) Σ (2k−1)!!/(2x²)^k truncated at its smallest term, whose
/// size is below e^{−x²}.
pub fn dawson(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain("dawson", format!("x = {x} must be finite and >= 0")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x < 6.0 {
        let s = x * x;
        // Φ(1/2, 3/2; s) = Σ s^k / ((2k+1) k!)
        let mut acc = CompensatedSum::default();
        let mut power = 1.0f64;
        let mut k = 0usize;
        loop {
            let t = power / (2 * k + 1) as f64;
            acc.add_real(t);
            if t < 1e-18 * acc.real() {
                break;
            }
            k += 1;
            power *= s / k as f64;
        }
        return Ok(x * (-s).exp() * acc.real());
    }
    let inv = 1.0 / (2.0 * x * x);
    let mut acc = CompensatedSum::default();
    let mut term = 1.0f64;
    let mut k = 0usize;
    loop {
        acc.add_real(term);
        k += 1;
        let next = term * (2 * k - 1) as f64 * inv;
        if next >= term || next < 1e-18 {
            break;
        }
        term = next;
    }
    Ok(acc.real() / (2.0 * x))
}
