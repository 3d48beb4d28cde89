//! Summation engine for power series of entire functions.
//!
//! Terms are accumulated with an error-free-transformation (Neumaier) sum in
//! double precision, or in double-double when the expected term growth makes
//! plain doubles useless. Every result carries an absolute error bound made
//! of three parts: the certified truncation tail, the propagated rounding of
//! the individual terms and the summation error.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::double_double::{two_sum, ComplexDD, DoubleDouble, DD_EPS};

pub type ComplexValue = Complex64;

/// Unit roundoff of binary64.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Ratio below which the remaining tail is bounded by geometric comparison.
pub const TAIL_RATIO: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Precision {
    /// Switch to double-double once the growth measure passes
    /// [`EvalConfig::extended_threshold`].
    #[default]
    Auto,
    Double,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub abs_tol: f64,
    pub max_terms: usize,
    pub precision: Precision,
    pub extended_threshold: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            max_terms: 2000,
            precision: Precision::Auto,
            extended_threshold: 20.0,
        }
    }
}

impl EvalConfig {
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn with_extended_threshold(mut self, threshold: f64) -> Self {
        self.extended_threshold = threshold;
        self
    }

    pub fn validate(&self) -> crate::Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(crate::Error::Invalid(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(crate::Error::Invalid("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    fn use_extended(&self, growth: f64) -> bool {
        match self.precision {
            Precision::Double => false,
            Precision::Extended => true,
            Precision::Auto => growth > self.extended_threshold,
        }
    }
}

/// A series value with its certified absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEval {
    pub value: ComplexValue,
    pub err_bound: f64,
    pub terms_used: usize,
    /// `false` means the tail could not be certified below `abs_tol`
    /// within `max_terms`; `value` must then not be trusted.
    pub converged: bool,
}

impl SeriesEval {
    pub fn exact(value: ComplexValue) -> Self {
        Self {
            value,
            err_bound: 0.0,
            terms_used: 1,
            converged: true,
        }
    }

    /// True when the result is converged and its bound is at most `tol`.
    pub fn meets(&self, tol: f64) -> bool {
        self.converged && self.err_bound <= tol
    }
}

/// Coefficient sequence `k ↦ c_k` of an entire power series.
///
/// Plain closures `Fn(usize) -> f64` implement this trait. They are assumed
/// to carry a relative error of at most `k` units of roundoff (the cost of
/// building `c_k` from `k` correctly rounded factors), so `c_0` is exact.
pub trait CoefficientRule {
    fn coeff(&self, k: usize) -> f64;

    fn coeff_rel_err(&self, k: usize) -> f64 {
        k as f64 * UNIT_ROUNDOFF
    }

    fn coeff_extended(&self, k: usize) -> DoubleDouble {
        self.coeff(k).into()
    }

    fn coeff_extended_rel_err(&self, k: usize) -> f64 {
        self.coeff_rel_err(k)
    }

    /// Measure of the largest term relative to the sum, in the units of the
    /// exponent of `e^growth`. For the exponential series this is `|z|`.
    fn growth(&self, z_abs: f64) -> f64 {
        z_abs
    }

    /// True when the ratio of consecutive nonzero coefficients, taken in
    /// absolute value, is nonincreasing in k. The stopping rule may then use
    /// any observed term ratio below one instead of waiting for 1/2.
    fn ratio_nonincreasing(&self) -> bool {
        false
    }
}

impl<F: Fn(usize) -> f64> CoefficientRule for F {
    fn coeff(&self, k: usize) -> f64 {
        self(k)
    }
}

/// Neumaier summation of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, t: ComplexValue) {
        let (s, e) = two_sum(self.re, t.re);
        self.re = s;
        self.re_c += e;
        let (s, e) = two_sum(self.im, t.im);
        self.im = s;
        self.im_c += e;
    }

    pub fn add_real(&mut self, t: f64) {
        let (s, e) = two_sum(self.re, t);
        self.re = s;
        self.re_c += e;
    }

    pub fn value(&self) -> ComplexValue {
        ComplexValue::new(self.re + self.re_c, self.im + self.im_c)
    }

    pub fn real(&self) -> f64 {
        self.re + self.re_c
    }
}

/// Compensated real sum of an iterator.
pub fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::default();
    for t in terms {
        acc.add_real(t);
    }
    acc.real()
}

/// Largest observed ratio accepted under [`CoefficientRule::ratio_nonincreasing`].
const MONOTONE_RATIO_MAX: f64 = 0.95;
/// Inflation of an observed ratio covering rounding in the two magnitudes.
const RATIO_SLACK: f64 = 1e-10;

/// Tracks the ratio-domination stopping rule across possibly zero terms.
#[derive(Debug, Default)]
struct TailTracker {
    last_nonzero: Option<f64>,
    monotone: bool,
}

impl TailTracker {
    fn new(monotone: bool) -> Self {
        Self {
            last_nonzero: None,
            monotone,
        }
    }

    /// Returns the certified tail bound once the ratio test passes.
    fn observe(&mut self, magnitude: f64) -> Option<f64> {
        if magnitude == 0.0 {
            return None;
        }
        let p = self.last_nonzero.replace(magnitude)?;
        let ratio = magnitude / p * (1.0 + RATIO_SLACK);
        if magnitude <= TAIL_RATIO * p {
            Some(magnitude * TAIL_RATIO / (1.0 - TAIL_RATIO))
        } else if self.monotone && ratio < MONOTONE_RATIO_MAX {
            Some(magnitude * ratio / (1.0 - ratio))
        } else {
            None
        }
    }
}

/// Sums `Σ_k c_k z^k` for an entire series.
///
/// Truncation happens at the first `K` where `|t_K| ≤ |t_{K'}|/2` for the
/// previous nonzero term `t_{K'}` and the geometric tail bound
/// `|t_K|·r/(1−r)` with `r = 1/2` is below `cfg.abs_tol`. The bound is sound
/// whenever the term ratios are eventually nonincreasing, which holds for
/// every Mittag-Leffler-type coefficient sequence. Rules that guarantee
/// nonincreasing ratios from the first term also accept `r = |t_K/t_{K'}|`
/// once it drops below 0.95; for small α the ratio approaches 1/2 only after many
/// thousands of terms.
pub fn sum_entire_series<R: CoefficientRule + ?Sized>(
    rule: &R,
    z: ComplexValue,
    cfg: &EvalConfig,
) -> SeriesEval {
    if z.re == 0.0 && z.im == 0.0 {
        let c0 = rule.coeff(0);
        return SeriesEval {
            value: ComplexValue::new(c0, 0.0),
            err_bound: c0.abs() * rule.coeff_rel_err(0),
            terms_used: 1,
            converged: true,
        };
    }
    if cfg.use_extended(rule.growth(z.norm())) {
        sum_extended(rule, z, cfg)
    } else {
        sum_double(rule, z, cfg)
    }
}

fn sum_double<R: CoefficientRule + ?Sized>(rule: &R, z: ComplexValue, cfg: &EvalConfig) -> SeriesEval {
    let u = UNIT_ROUNDOFF;
    let mut acc = CompensatedSum::default();
    let mut tail = TailTracker::new(rule.ratio_nonincreasing());
    let mut power = ComplexValue::new(1.0, 0.0);
    let mut abs_sum = 0.0;
    let mut term_err = 0.0;
    for k in 0..cfg.max_terms {
        let t = power * rule.coeff(k);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return unconverged(acc.value(), k);
        }
        acc.add(t);
        let mag = t.norm();
        abs_sum += mag;
        // |z^k| carries at most ~2.24·k·u from complex products.
        term_err += mag * (rule.coeff_rel_err(k) + (2.5 * k as f64 + 2.0) * u);
        if let Some(tail_bound) = tail.observe(mag) {
            if tail_bound <= cfg.abs_tol {
                let n = (k + 1) as f64;
                let value = acc.value();
                let sum_err = 2.0 * u * value.norm() + 4.0 * n * u * u * abs_sum;
                return SeriesEval {
                    value,
                    err_bound: tail_bound + term_err + sum_err,
                    terms_used: k + 1,
                    converged: true,
                };
            }
        }
        power *= z;
    }
    unconverged(acc.value(), cfg.max_terms)
}

fn sum_extended<R: CoefficientRule + ?Sized>(
    rule: &R,
    z: ComplexValue,
    cfg: &EvalConfig,
) -> SeriesEval {
    let zdd = ComplexDD::from_f64(z.re, z.im);
    let mut acc = ComplexDD::ZERO;
    let mut tail = TailTracker::new(rule.ratio_nonincreasing());
    let mut power = ComplexDD::ONE;
    let mut abs_sum = 0.0;
    let mut term_err = 0.0;
    for k in 0..cfg.max_terms {
        let t = power.scale(rule.coeff_extended(k));
        if !(t.re.is_finite() && t.im.is_finite()) {
            return unconverged(to_complex(acc), k);
        }
        acc = acc + t;
        let mag = t.norm_f64();
        abs_sum += mag;
        term_err += mag * (rule.coeff_extended_rel_err(k) + (2.5 * k as f64 + 2.0) * DD_EPS);
        if let Some(tail_bound) = tail.observe(mag) {
            if tail_bound <= cfg.abs_tol {
                let n = (k + 1) as f64;
                let value = to_complex(acc);
                // rounding to binary64 at the end, plus n double-double additions
                let sum_err = UNIT_ROUNDOFF * value.norm() + 2.0 * n * DD_EPS * abs_sum;
                return SeriesEval {
                    value,
                    err_bound: tail_bound + term_err + sum_err,
                    terms_used: k + 1,
                    converged: true,
                };
            }
        }
        power = power * zdd;
    }
    unconverged(to_complex(acc), cfg.max_terms)
}

fn to_complex(c: ComplexDD) -> ComplexValue {
    ComplexValue::new(c.re.to_f64(), c.im.to_f64())
}

fn unconverged(value: ComplexValue, terms_used: usize) -> SeriesEval {
    SeriesEval {
        value,
        err_bound: f64::INFINITY,
        terms_used,
        converged: false,
    }
}
