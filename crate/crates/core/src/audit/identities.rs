//! Point residuals of the inverse relation, the period search and the
//! monotonicity audit.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::Verdict;
use crate::error::{domain, Error, Result};
use crate::mittag_leffler::{AlphaParam, Duplication, MittagLeffler};
use crate::special::{integrate, ComplexValue, EvalConfig, QuadratureConfig, UNIT_ROUNDOFF};

/// Residuals of the inverse relation at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseResidual {
    pub alpha: f64,
    pub x: f64,
    /// |E_α(ix^α)·E_α(−ix^α) − 1|
    pub r1: f64,
    pub err1: f64,
    /// |E_α(i(−x)^α) − E_α(−ix^α)| with (−x)^α = x^α e^{iαπ}
    pub r2: f64,
    pub err2: f64,
}

pub fn inverse_relation_residual(alpha: f64, x: f64) -> Result<InverseResidual> {
    let a = AlphaParam::trig(alpha)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain("inverse_relation_residual", format!("x = {x} must be > 0")));
    }
    let ml = MittagLeffler::new(a);
    let cfg = EvalConfig::default();
    let y = x.powf(a.get());
    let plus = ml.eval(ComplexValue::new(0.0, y), &cfg)?;
    let minus = ml.eval(ComplexValue::new(0.0, -y), &cfg)?;
    // i·(−x)^α on the principal branch
    let branch = ComplexValue::from_polar(y, a.get() * PI + FRAC_PI_2);
    let reflected = ml.eval(branch, &cfg)?;
    let converged = plus.converged && minus.converged && reflected.converged;

    let prod = plus.value * minus.value;
    let r1 = (prod - 1.0).norm();
    let err1 = plus.value.norm() * minus.err_bound
        + minus.value.norm() * plus.err_bound
        + plus.err_bound * minus.err_bound
        + 4.0 * UNIT_ROUNDOFF * (prod.norm() + 1.0);
    let r2 = (reflected.value - minus.value).norm();
    let err2 = reflected.err_bound + minus.err_bound + 2.0 * UNIT_ROUNDOFF * r2;
    let (err1, err2) = if converged { (err1, err2) } else { (f64::INFINITY, f64::INFINITY) };
    Ok(InverseResidual {
        alpha: a.get(),
        x,
        r1,
        err1,
        r2,
        err2,
    })
}

pub const PERIOD_SCAN_STEP: f64 = 1e-3;
/// Scan points with a larger error bound end the search window.
pub const PERIOD_CERT_ERR: f64 = 1e-4;
/// Growth past which the scan sums in double-double; lower than the default
/// so that the double-precision bound stays far below [`PERIOD_CERT_ERR`].
const PERIOD_EXTENDED_THRESHOLD: f64 = 10.0;
const GOLDEN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodSearchResult {
    pub alpha: f64,
    pub m_star: f64,
    /// |E_α(i m_star^α) − 1|
    pub residual_star: f64,
    pub err_bound: f64,
    /// window actually searched
    pub search_window: [f64; 2],
    pub requested_window: [f64; 2],
    pub local_minima: usize,
}

impl PeriodSearchResult {
    pub fn window_shrunk(&self) -> bool {
        self.search_window != self.requested_window
    }
}

struct PeriodObjective {
    ml: MittagLeffler,
    cfg: EvalConfig,
}

impl PeriodObjective {
    /// (r(M), error bound); the bound is infinite when the series failed.
    fn eval(&self, m: f64) -> Result<(f64, f64)> {
        let pair = self.ml.frac_trig(m, &self.cfg)?;
        let r = (pair.cos_part - 1.0).hypot(pair.sin_part);
        let err = if pair.converged {
            std::f64::consts::SQRT_2 * pair.err_bound + 2.0 * UNIT_ROUNDOFF * (r + 1.0)
        } else {
            f64::INFINITY
        };
        Ok((r, err))
    }
}

/// Golden-section minimization on [lo, hi].
fn golden_section(obj: &PeriodObjective, mut lo: f64, mut hi: f64) -> Result<(f64, f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = obj.eval(c)?;
    let mut fd = obj.eval(d)?;
    while hi - lo > GOLDEN_TOL * (1.0 + lo.abs()) {
        if fc.0 <= fd.0 {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = obj.eval(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = obj.eval(d)?;
        }
    }
    Ok(if fc.0 <= fd.0 { (c, fc.0, fc.1) } else { (d, fd.0, fd.1) })
}

/// Global minimum of r(M) = |E_α(iM^α) − 1| over [m_min, m_max].
///
/// A dense scan locates every local minimum, each is refined by golden
/// section, and the window end points are kept as candidates. If evaluations
/// stop being certified (error bound above [`PERIOD_CERT_ERR`]) the window
/// is cut before the first such point and the cut is reported.
pub fn period_search(alpha: f64, m_min: f64, m_max: f64) -> Result<PeriodSearchResult> {
    let a = AlphaParam::trig(alpha)?;
    if !(m_min > 0.0 && m_min < m_max && m_max <= 50.0) {
        return Err(domain(
            "period_search",
            format!("need 0 < m_min < m_max ≤ 50, got [{m_min}, {m_max}]"),
        ));
    }
    let obj = PeriodObjective {
        ml: MittagLeffler::new(a),
        cfg: EvalConfig::default().with_extended_threshold(PERIOD_EXTENDED_THRESHOLD),
    };
    let n = ((m_max - m_min) / PERIOD_SCAN_STEP * (1.0 + 1e-12)).floor() as usize;
    let mut ms: Vec<f64> = (0..=n).map(|i| m_min + i as f64 * PERIOD_SCAN_STEP).collect();
    if *ms.last().expect("nonempty") < m_max {
        ms.push(m_max);
    }
    let scan = ms
        .par_iter()
        .map(|&m| obj.eval(m))
        .collect::<Result<Vec<_>>>()?;

    let usable = scan
        .iter()
        .position(|&(_, e)| !(e <= PERIOD_CERT_ERR))
        .unwrap_or(scan.len());
    if usable < 2 {
        return Err(Error::Invalid(format!(
            "period search at α = {}: no certified evaluations in [{m_min}, {m_max}]",
            a.get()
        )));
    }
    let ms = &ms[..usable];
    let scan = &scan[..usable];
    let hi_edge = ms[usable - 1];

    let mut candidates: Vec<(f64, f64, f64)> = vec![
        (ms[0], scan[0].0, scan[0].1),
        (hi_edge, scan[usable - 1].0, scan[usable - 1].1),
    ];
    let interior: Vec<usize> = (1..usable - 1)
        .filter(|&i| scan[i].0 <= scan[i - 1].0 && scan[i].0 <= scan[i + 1].0)
        .collect();
    let refined = interior
        .par_iter()
        .map(|&i| golden_section(&obj, ms[i - 1], ms[i + 1]))
        .collect::<Result<Vec<_>>>()?;
    candidates.extend(refined);
    let best = candidates
        .iter()
        .copied()
        .reduce(|b, c| if c.1 < b.1 || (c.1 == b.1 && c.0 < b.0) { c } else { b })
        .expect("at least the end points");
    Ok(PeriodSearchResult {
        alpha: a.get(),
        m_star: best.0,
        residual_star: best.1,
        err_bound: best.2,
        search_window: [m_min, hi_edge],
        requested_window: [m_min, m_max],
        local_minima: interior.len(),
    })
}

/// sup over x ∈ [0, x_max] of |E_α(i(x+M)^α) − E_α(ix^α)|, the shift form of
/// the period claim, with the largest error bound met.
pub fn period_shift_residual(alpha: f64, m: f64, x_max: f64, step: f64) -> Result<(f64, f64, f64)> {
    let a = AlphaParam::trig(alpha)?;
    if !(m > 0.0 && x_max > 0.0 && step > 0.0 && m + x_max <= 50.0) {
        return Err(domain("period_shift_residual", "need M, x_max, step > 0 and M + x_max ≤ 50"));
    }
    let ml = MittagLeffler::new(a);
    let cfg = EvalConfig::default().with_extended_threshold(PERIOD_EXTENDED_THRESHOLD);
    let n = (x_max / step * (1.0 + 1e-12)).floor() as usize;
    let rows = (0..=n)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64, f64)> {
            let x = (i as f64 * step).min(x_max);
            let p = ml.frac_trig(x, &cfg)?;
            let q = ml.frac_trig(x + m, &cfg)?;
            let r = (q.cos_part - p.cos_part).hypot(q.sin_part - p.sin_part);
            let e = if p.converged && q.converged {
                std::f64::consts::SQRT_2 * (p.err_bound + q.err_bound) + 2.0 * UNIT_ROUNDOFF * r
            } else {
                f64::INFINITY
            };
            Ok((x, r, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut sup, mut at, mut err) = (0.0, 0.0, 0.0f64);
    for (x, r, e) in rows {
        if r > sup {
            sup = r;
            at = x;
        }
        err = err.max(e);
    }
    Ok((sup, at, err))
}

/// Largest first difference of x ↦ E_{2α}(−x^{2α}) on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityResult {
    pub alpha: f64,
    /// max_i (v_{i+1} − v_i); negative when strictly decreasing
    pub max_increase: f64,
    /// left end of the interval where it occurs
    pub argmax: f64,
    pub err_bound: f64,
    pub verdict: Verdict,
}

/// Allowed first difference in the monotonicity audit.
pub const MONOTONE_TOL: f64 = 1e-12;

/// Nonincrease of E_{2α}(−x^{2α}) on [0, x_max], 0 < α ≤ 1/2.
pub fn monotonicity_audit(alpha: f64, x_max: f64, step: f64) -> Result<MonotonicityResult> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(domain("monotonicity_audit", format!("α = {alpha} outside (0, 1/2]")));
    }
    if !(step > 0.0 && step <= x_max && x_max <= 5.0) {
        return Err(domain("monotonicity_audit", "need 0 < step ≤ x_max ≤ 5"));
    }
    let dup = Duplication::new(AlphaParam::new(2.0 * alpha)?);
    let cfg = EvalConfig::default();
    let n = (x_max / step * (1.0 + 1e-12)).floor() as usize;
    let vals = (0..=n)
        .into_par_iter()
        .map(|i| dup.eval((i as f64 * step).min(x_max), &cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut max_inc = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    let mut err_at = 0.0;
    let mut err_bound = 0.0f64;
    for i in 0..n {
        let d = vals[i + 1].value.re - vals[i].value.re;
        let e = vals[i + 1].err_bound + vals[i].err_bound + 2.0 * UNIT_ROUNDOFF;
        err_bound = err_bound.max(e);
        if d > max_inc {
            max_inc = d;
            argmax = i as f64 * step;
            err_at = e;
        }
    }
    let verdict = if max_inc <= MONOTONE_TOL {
        Verdict::ConfirmsPaper
    } else if err_at > max_inc {
        Verdict::Inconclusive
    } else {
        Verdict::ContradictsPaper
    };
    Ok(MonotonicityResult {
        alpha,
        max_increase: max_inc,
        argmax,
        err_bound,
        verdict,
    })
}

/// D(x) = ∫_0^x e^{t² − x²} dt by adaptive quadrature; independent of the
/// series route in [`crate::special::dawson`].
pub fn dawson_by_quadrature(x: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(domain("dawson_by_quadrature", format!("x = {x} must be >= 0")));
    }
    let q = QuadratureConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-14,
        max_subdivisions: 4000,
    };
    let r = integrate(|t| ((t - x) * (t + x)).exp(), 0.0, x, &q)?;
    Ok((r.value, r.err))
}
