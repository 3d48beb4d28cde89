//! Coefficients of the Cauchy product E_α(i y)·E_α(−i y) = Σ_n i^n A_n(α) y^n.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::mittag_leffler::{AlphaParam, MittagLeffler};
use crate::special::double_double::{DoubleDouble, DD_EPS};
use crate::special::{gamma_pos, CompensatedSum, EvalConfig, UNIT_ROUNDOFF};

pub const MAX_CAUCHY_INDEX: usize = 60;

/// Relative error of one reciprocal-gamma factor.
const RECIP_GAMMA_REL_ERR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyCoefficient {
    pub n: usize,
    pub alpha: f64,
    pub value: f64,
}

fn recip_gammas(alpha: f64, n: usize) -> Result<Vec<f64>> {
    (0..=n)
        .map(|k| gamma_pos(1.0 + alpha * k as f64).map(f64::recip))
        .collect()
}

/// A_n(α) = Σ_{k=0}^{n} (−1)^{n−k} / (Γ(1+αk) Γ(1+α(n−k))).
pub fn cauchy_coefficient(n: usize, alpha: f64) -> Result<CauchyCoefficient> {
    let a = AlphaParam::trig(alpha)?.get();
    if n > MAX_CAUCHY_INDEX {
        return Err(domain("cauchy_coefficient", format!("n = {n} exceeds {MAX_CAUCHY_INDEX}")));
    }
    let c = recip_gammas(a, n)?;
    let mut acc = CompensatedSum::default();
    for k in 0..=n {
        let t = c[k] * c[n - k];
        acc.add_real(if (n - k).is_multiple_of(2) { t } else { -t });
    }
    Ok(CauchyCoefficient {
        n,
        alpha: a,
        value: acc.real(),
    })
}

/// Relative error of a double-double reciprocal-gamma coefficient.
const RECIP_GAMMA_DD_REL_ERR: f64 = 1e-28;

/// A_n(α) in double-double with an absolute error bound.
///
/// Even coefficients decay like 2^n/Γ(1+αn) while the summands cancel, so
/// for α near 1 and n near 30 the double route has no correct digits left.
pub fn cauchy_coefficient_dd(n: usize, alpha: f64) -> Result<(DoubleDouble, f64)> {
    let ap = AlphaParam::trig(alpha)?;
    if n > MAX_CAUCHY_INDEX {
        return Err(domain("cauchy_coefficient", format!("n = {n} exceeds {MAX_CAUCHY_INDEX}")));
    }
    let ml = MittagLeffler::new(ap);
    let c: Vec<DoubleDouble> = (0..=n).map(|k| ml.coefficient(k)).collect();
    let mut acc = DoubleDouble::ZERO;
    let mut b = 0.0;
    for k in 0..=n {
        let t = c[k] * c[n - k];
        b += t.to_f64().abs();
        acc = if (n - k).is_multiple_of(2) { acc + t } else { acc - t };
    }
    let err = b * (1.01 * (2.0 * RECIP_GAMMA_DD_REL_ERR + (n as f64 + 4.0) * DD_EPS));
    Ok((acc, err))
}

/// B_n = Σ_k c_k c_{n−k} ≥ |A_n| for reciprocal-gamma coefficients c.
fn majorant(c: &[f64], n: usize) -> f64 {
    (0..=n).map(|k| c[k] * c[n - k]).sum()
}

/// Truncated Cauchy-product series compared with cos² + sin².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesProductCheck {
    pub alpha: f64,
    pub x: f64,
    /// Σ_{m≤M} (−1)^m A_{2m} x^{2αm}
    pub partial: f64,
    /// cos_α(x^α)² + sin_α(x^α)²
    pub product: f64,
    /// |partial − product|
    pub residual: f64,
    /// truncation tail + rounding + evaluation error
    pub bound: f64,
}

impl SeriesProductCheck {
    pub fn within_bound(&self) -> bool {
        self.residual <= self.bound
    }
}

/// Checks Σ_{m=0}^{M} (−1)^m x^{2αm} A_{2m}(α) against p(x, α).
///
/// The dropped terms satisfy |A_n| ≤ B_n = Σ_k c_k c_{n−k}, so the tail is
/// bounded by Σ_{n>2M} B_n y^n with y = x^α, summed until geometric closure.
pub fn series_product_check(alpha: f64, x: f64, m_terms: usize) -> Result<SeriesProductCheck> {
    let ap = AlphaParam::trig(alpha)?;
    let a = ap.get();
    if !(0.0..=1.5).contains(&x) {
        return Err(domain("series_product_check", format!("x = {x} outside [0, 1.5]")));
    }
    if 2 * m_terms > MAX_CAUCHY_INDEX {
        return Err(domain("series_product_check", format!("M = {m_terms} exceeds 30")));
    }
    let y = x.powf(a);
    let mut acc = CompensatedSum::default();
    let mut rounding = 0.0;
    let mut y2m = 1.0f64;
    for m in 0..=m_terms {
        let n = 2 * m;
        let coeff = cauchy_coefficient(n, a)?.value;
        let c = recip_gammas(a, n)?;
        let b = majorant(&c, n);
        let term = if m % 2 == 0 { coeff * y2m } else { -coeff * y2m };
        acc.add_real(term);
        rounding += y2m * b * (2.0 * RECIP_GAMMA_REL_ERR + (n as f64 + 4.0) * UNIT_ROUNDOFF);
        y2m *= y * y;
    }

    // tail over even n > 2M
    let mut tail = 0.0;
    let n_max = 4000usize;
    let c = recip_gammas(a, n_max)?;
    let mut prev = f64::INFINITY;
    let mut n = 2 * m_terms + 2;
    loop {
        let t = majorant(&c, n) * y.powi(n as i32);
        tail += t;
        if t == 0.0 || (t <= 0.5 * prev && t <= 1e-300_f64.max(1e-20 * tail)) {
            tail += t; // geometric closure with ratio 1/2
            break;
        }
        prev = t;
        n += 2;
        if n > n_max {
            tail = f64::INFINITY;
            break;
        }
    }

    let pair = MittagLeffler::new(ap).frac_trig(x, &EvalConfig::default())?;
    let (p, p_err) = pair.modulus_squared();
    let partial = acc.real();
    let residual = (partial - p).abs();
    let bound = tail + rounding + p_err + 2.0 * UNIT_ROUNDOFF * p.abs();
    Ok(SeriesProductCheck {
        alpha: a,
        x,
        partial,
        product: p,
        residual,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        assert_eq!(cauchy_coefficient(0, 0.37).unwrap().value, 1.0);
        assert!(cauchy_coefficient(3, 0.6).unwrap().value.abs() < 1e-14);
        let a2 = cauchy_coefficient(2, 0.5).unwrap().value;
        assert!((a2 - (2.0 - 4.0 / PI)).abs() < 1e-12);
        assert!((a2 - 0.726_760_455_264_837_3).abs() < 1e-12);
        assert!(cauchy_coefficient(2, 1.0).unwrap().value.abs() <= 1e-14);
        assert!(cauchy_coefficient(61, 0.5).is_err());
        assert!(cauchy_coefficient(2, 1.5).is_err());
    }

    #[test]
    fn extended_route_agrees_and_resolves_small_even_terms() {
        for a in [0.25, 0.5, 0.75] {
            for n in [2, 6, 10] {
                let (v, e) = cauchy_coefficient_dd(n, a).unwrap();
                let d = cauchy_coefficient(n, a).unwrap().value;
                assert!((v.to_f64() - d).abs() < 1e-13, "α = {a}, n = {n}");
                assert!(e < 1e-26);
            }
        }
        // mpmath, 50 digits
        let (v, e) = cauchy_coefficient_dd(28, 0.9).unwrap();
        assert!((v.to_f64() / 4.117_923_934_679_139_8e-28 - 1.0).abs() < 1e-12);
        assert!(v.to_f64().abs() > 1e3 * e);
    }

    #[test]
    fn order_one_coefficients_vanish() {
        // (1 − 1)^n / n! = 0 for n ≥ 1
        for n in 1..=MAX_CAUCHY_INDEX {
            assert!(cauchy_coefficient(n, 1.0).unwrap().value.abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn truncated_product_matches_modulus() {
        for a in [0.25, 0.5, 0.75, 1.0] {
            for x in [0.0, 0.5, 1.0, 1.5] {
                let r = series_product_check(a, x, 30).unwrap();
                assert!(r.within_bound(), "{r:?}");
            }
        }
    }
}
