//! The Mittag-Leffler function E_α(z) = Σ_k z^k / Γ(1 + kα), the fractional
//! trigonometric pair defined by E_α(i x^α) = cos_α(x^α) + i sin_α(x^α), and
//! the duplication route cos_α(x^α) = E_{2α}(−x^{2α}).
//!
//! Coefficients 1/Γ(1 + kα) are tabulated once per order in double-double, so
//! the same table feeds both the double and the extended-precision paths of
//! the series engine. Build a [`MittagLeffler`] once and reuse it for sweeps;
//! the free functions are conveniences for one-off evaluations.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::double_double::DoubleDouble;
use crate::special::{
    recip_gamma_dd, sum_entire_series, CoefficientRule, ComplexValue, EvalConfig, SeriesEval,
    UNIT_ROUNDOFF,
};

/// Upper limit on the effective argument; see [`MittagLeffler::eval`].
pub const MAX_ARG: f64 = 50.0;

/// Relative error of a tabulated double-double coefficient (measured worst
/// case against 50-digit references is 2.5e-29).
const COEFF_DD_REL_ERR: f64 = 1e-28;
/// Below this size the low word of a double-double is subnormal.
const DD_FULL_PRECISION_MIN: f64 = 1e-290;
/// Past this argument 1/Γ underflows.
const RECIP_GAMMA_CUTOFF: f64 = 178.0;
const TABLE_LIMIT: usize = 4096;

/// Order α of the Mittag-Leffler function, restricted to (0, 2].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 2.0 {
            Ok(Self(alpha))
        } else {
            Err(domain("alpha", format!("α = {alpha} outside (0, 2]")))
        }
    }

    /// An order valid for the fractional trigonometric functions, (0, 1].
    pub fn trig(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(domain("alpha", format!("α = {alpha} outside (0, 1]")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// cos_α(x^α) and sin_α(x^α) with a common absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracTrigPair {
    pub cos_part: f64,
    pub sin_part: f64,
    pub err_bound: f64,
    pub converged: bool,
}

impl FracTrigPair {
    /// |E_α(i x^α)|² = cos² + sin², with its propagated error bound.
    pub fn modulus_squared(&self) -> (f64, f64) {
        let p = self.cos_part * self.cos_part + self.sin_part * self.sin_part;
        let e = self.err_bound;
        let bound = 2.0 * (self.cos_part.abs() + self.sin_part.abs()) * e
            + 2.0 * e * e
            + 2.0 * UNIT_ROUNDOFF * p;
        (p, bound)
    }
}

#[derive(Debug, Clone)]
pub struct MittagLeffler {
    alpha: f64,
    coeffs: Vec<DoubleDouble>,
    coeffs_f64: Vec<f64>,
}

impl MittagLeffler {
    pub fn new(alpha: AlphaParam) -> Self {
        let a = alpha.get();
        let n = ((RECIP_GAMMA_CUTOFF / a).ceil() as usize + 2).min(TABLE_LIMIT);
        let coeffs: Vec<DoubleDouble> = (0..n).map(|k| recip_gamma_at(a, k)).collect();
        let coeffs_f64 = coeffs.iter().map(|c| c.to_f64()).collect();
        Self {
            alpha: a,
            coeffs,
            coeffs_f64,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// 1/Γ(1 + kα) in double-double.
    pub fn coefficient(&self, k: usize) -> DoubleDouble {
        match self.coeffs.get(k) {
            Some(&c) => c,
            None => recip_gamma_at(self.alpha, k),
        }
    }

    fn coefficient_f64(&self, k: usize) -> f64 {
        match self.coeffs_f64.get(k) {
            Some(&c) => c,
            None => recip_gamma_at(self.alpha, k).to_f64(),
        }
    }

    fn check_arg(&self, z: ComplexValue) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(domain("eval_mlf", "argument must be finite"));
        }
        let r = z.norm();
        if r.min(r.powf(1.0 / self.alpha)) > MAX_ARG {
            return Err(domain(
                "eval_mlf",
                format!("|z| = {r} beyond the certified range for α = {}", self.alpha),
            ));
        }
        Ok(())
    }

    /// E_α(z).
    ///
    /// Accepts z when `min(|z|, |z|^{1/α}) ≤ 50`. The quantity `|z|^{1/α}`
    /// is the exponent of the largest series term, so this covers |z| ≤ 50
    /// for α ≤ 1 and the much larger arguments that stay tame for α > 1.
    pub fn eval(&self, z: ComplexValue, cfg: &EvalConfig) -> Result<SeriesEval> {
        cfg.validate()?;
        self.check_arg(z)?;
        Ok(sum_entire_series(&PlainRule(self), z, cfg))
    }

    /// E_α(x) for real x.
    pub fn eval_real(&self, x: f64, cfg: &EvalConfig) -> Result<SeriesEval> {
        self.eval(ComplexValue::new(x, 0.0), cfg)
    }

    /// cos_α(x^α) and sin_α(x^α) from the even and odd sub-series of
    /// E_α(i x^α), each summed with real coefficients.
    pub fn frac_trig(&self, x: f64, cfg: &EvalConfig) -> Result<FracTrigPair> {
        if self.alpha > 1.0 {
            return Err(domain("frac_trig", format!("α = {} outside (0, 1]", self.alpha)));
        }
        if !x.is_finite() || x < 0.0 {
            return Err(domain("frac_trig", format!("x = {x} must be finite and >= 0")));
        }
        cfg.validate()?;
        if x == 0.0 {
            return Ok(FracTrigPair {
                cos_part: 1.0,
                sin_part: 0.0,
                err_bound: 0.0,
                converged: true,
            });
        }
        let y = x.powf(self.alpha);
        let z = ComplexValue::new(y, 0.0);
        self.check_arg(z)?;
        let c = sum_entire_series(&SplitRule { ml: self, odd: false }, z, cfg);
        let s = sum_entire_series(&SplitRule { ml: self, odd: true }, z, cfg);
        Ok(FracTrigPair {
            cos_part: c.value.re,
            sin_part: s.value.re,
            err_bound: c.err_bound.max(s.err_bound),
            converged: c.converged && s.converged,
        })
    }

    /// d/dx E_α(−x) by termwise differentiation.
    pub fn derivative_neg_real(&self, x: f64, cfg: &EvalConfig) -> Result<SeriesEval> {
        cfg.validate()?;
        let z = ComplexValue::new(-x, 0.0);
        self.check_arg(z)?;
        Ok(sum_entire_series(&DerivativeRule(self), z, cfg))
    }
}

fn recip_gamma_at(alpha: f64, k: usize) -> DoubleDouble {
    let arg = DoubleDouble::from_prod(k as f64, alpha).add_f64(1.0);
    if arg.hi > RECIP_GAMMA_CUTOFF {
        DoubleDouble::ZERO
    } else {
        recip_gamma_dd(arg)
    }
}

fn ml_growth(alpha: f64, z_abs: f64) -> f64 {
    z_abs.powf(1.0 / alpha)
}

struct PlainRule<'a>(&'a MittagLeffler);

impl CoefficientRule for PlainRule<'_> {
    fn coeff(&self, k: usize) -> f64 {
        self.0.coefficient_f64(k)
    }
    fn coeff_rel_err(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            UNIT_ROUNDOFF + COEFF_DD_REL_ERR
        }
    }
    fn coeff_extended(&self, k: usize) -> DoubleDouble {
        self.0.coefficient(k)
    }
    fn coeff_extended_rel_err(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else if self.0.coefficient_f64(k).abs() < DD_FULL_PRECISION_MIN {
            UNIT_ROUNDOFF
        } else {
            COEFF_DD_REL_ERR
        }
    }
    fn growth(&self, z_abs: f64) -> f64 {
        ml_growth(self.0.alpha, z_abs)
    }
    fn ratio_nonincreasing(&self) -> bool {
        true
    }
}

/// Even (cos) or odd (sin) part of E_α(i y) as a real series in y:
/// c_k i^k restricted to one parity, i.e. ±c_k with sign (−1)^{⌊k/2⌋}.
struct SplitRule<'a> {
    ml: &'a MittagLeffler,
    odd: bool,
}

impl SplitRule<'_> {
    fn active(&self, k: usize) -> bool {
        (k % 2 == 1) == self.odd
    }
    fn sign(k: usize) -> f64 {
        if (k / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

impl CoefficientRule for SplitRule<'_> {
    fn coeff(&self, k: usize) -> f64 {
        if self.active(k) {
            Self::sign(k) * self.ml.coefficient_f64(k)
        } else {
            0.0
        }
    }
    fn coeff_rel_err(&self, k: usize) -> f64 {
        PlainRule(self.ml).coeff_rel_err(k)
    }
    fn coeff_extended(&self, k: usize) -> DoubleDouble {
        if self.active(k) {
            self.ml.coefficient(k).mul_f64(Self::sign(k))
        } else {
            DoubleDouble::ZERO
        }
    }
    fn coeff_extended_rel_err(&self, k: usize) -> f64 {
        PlainRule(self.ml).coeff_extended_rel_err(k)
    }
    fn growth(&self, z_abs: f64) -> f64 {
        ml_growth(self.ml.alpha, z_abs)
    }
    fn ratio_nonincreasing(&self) -> bool {
        true
    }
}

/// Coefficients of d/dx E_α(−x) as a series in (−x): −(k+1)/Γ(1+(k+1)α).
struct DerivativeRule<'a>(&'a MittagLeffler);

impl CoefficientRule for DerivativeRule<'_> {
    fn coeff(&self, k: usize) -> f64 {
        -((k + 1) as f64) * self.0.coefficient_f64(k + 1)
    }
    fn coeff_rel_err(&self, _k: usize) -> f64 {
        2.0 * UNIT_ROUNDOFF + COEFF_DD_REL_ERR
    }
    fn coeff_extended(&self, k: usize) -> DoubleDouble {
        self.0.coefficient(k + 1).mul_f64(-((k + 1) as f64))
    }
    fn coeff_extended_rel_err(&self, k: usize) -> f64 {
        PlainRule(self.0).coeff_extended_rel_err(k + 1)
    }
    fn growth(&self, z_abs: f64) -> f64 {
        ml_growth(self.0.alpha, z_abs)
    }
    fn ratio_nonincreasing(&self) -> bool {
        true
    }
}

/// E_α(z) for a single argument.
pub fn eval_mlf(alpha: AlphaParam, z: ComplexValue, cfg: &EvalConfig) -> Result<SeriesEval> {
    MittagLeffler::new(alpha).eval(z, cfg)
}

/// (cos_α(x^α), sin_α(x^α)) for 0 < α ≤ 1 and x ≥ 0.
pub fn frac_trig(alpha: AlphaParam, x: f64, cfg: &EvalConfig) -> Result<FracTrigPair> {
    let alpha = AlphaParam::trig(alpha.get())?;
    MittagLeffler::new(alpha).frac_trig(x, cfg)
}

/// cos_α(x^α) through the duplication route E_{2α}(−x^{2α}).
pub fn cos_via_duplication(alpha: AlphaParam, x: f64, cfg: &EvalConfig) -> Result<SeriesEval> {
    let alpha = AlphaParam::trig(alpha.get())?;
    let doubled = AlphaParam::new(2.0 * alpha.get())?;
    Duplication::new(doubled).eval(x, cfg)
}

/// Reusable evaluator for x ↦ E_β(−x^β).
#[derive(Debug, Clone)]
pub struct Duplication {
    ml: MittagLeffler,
}

impl Duplication {
    /// `beta` is the doubled order 2α.
    pub fn new(beta: AlphaParam) -> Self {
        Self {
            ml: MittagLeffler::new(beta),
        }
    }

    pub fn eval(&self, x: f64, cfg: &EvalConfig) -> Result<SeriesEval> {
        if !x.is_finite() || x < 0.0 {
            return Err(domain("cos_via_duplication", format!("x = {x} must be >= 0")));
        }
        self.ml.eval_real(-x.powf(self.ml.alpha), cfg)
    }
}

/// Step of the central difference used by [`mlf_derivative_check`].
pub const DERIVATIVE_CHECK_STEP: f64 = 1e-5;

/// |termwise derivative of E_α(−x) − central finite difference|.
pub fn mlf_derivative_check(alpha: AlphaParam, x: f64) -> Result<f64> {
    if !(0.1..=5.0).contains(&x) {
        return Err(domain("mlf_derivative_check", format!("x = {x} outside [0.1, 5]")));
    }
    let cfg = EvalConfig::default();
    let ml = MittagLeffler::new(alpha);
    let d = ml.derivative_neg_real(x, &cfg)?;
    let h = DERIVATIVE_CHECK_STEP;
    let up = ml.eval_real(-(x + h), &cfg)?;
    let down = ml.eval_real(-(x - h), &cfg)?;
    if !(d.converged && up.converged && down.converged) {
        return Err(Error::Invalid("derivative check did not converge".into()));
    }
    let fd = (up.value.re - down.value.re) / (2.0 * h);
    Ok((d.value.re - fd).abs())
}
