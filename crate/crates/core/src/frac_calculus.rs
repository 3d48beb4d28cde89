//! Fractional derivative of power functions and the residuals of the
//! fractional Leibniz rule, the two fractional chain rules and the
//! eigenfunction relation D^α E_α(λx^α) = λ E_α(λx^α).
//!
//! The operator acts on monomials only:
//!
//! ```text
//! D^α x^p = Γ(1+p)/Γ(1+p−α) · x^{p−α},    D^α c = 0,
//! ```
//!
//! the second rule being the "modified" convention under which constants are
//! annihilated. No integral form of the derivative is implemented.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::mittag_leffler::{AlphaParam, MittagLeffler};
use crate::special::{gamma_pos, ComplexValue, EvalConfig, TAIL_RATIO, UNIT_ROUNDOFF};

/// Exponents closer than this are merged in a [`MonomialSum`].
pub const EXPONENT_MERGE_TOL: f64 = 1e-12;

/// Relative error charged per gamma evaluation.
const GAMMA_REL_ERR: f64 = 1e-14;

/// `coeff · x^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonomialTerm {
    pub coeff: f64,
    pub exponent: f64,
}

impl MonomialTerm {
    pub fn new(coeff: f64, exponent: f64) -> Result<Self> {
        if !coeff.is_finite() || !exponent.is_finite() || exponent <= -1.0 {
            return Err(domain(
                "MonomialTerm",
                format!("need finite coeff and exponent > -1, got ({coeff}, {exponent})"),
            ));
        }
        Ok(Self { coeff, exponent })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.exponent == 0.0 {
            self.coeff
        } else {
            self.coeff * x.powf(self.exponent)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            coeff: self.coeff * other.coeff,
            exponent: self.exponent + other.exponent,
        }
    }

    /// (c x^p)^q = c^q x^{pq}, for c > 0.
    pub fn powf(&self, q: f64) -> Result<Self> {
        if self.coeff <= 0.0 {
            return Err(domain("MonomialTerm::powf", "coefficient must be positive"));
        }
        Ok(Self {
            coeff: self.coeff.powf(q),
            exponent: self.exponent * q,
        })
    }

    /// (c₁ u^{p₁}) ∘ (c₂ x^{p₂}) = c₁ c₂^{p₁} x^{p₁p₂}.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let lifted = inner.powf(self.exponent)?;
        Ok(Self {
            coeff: self.coeff * lifted.coeff,
            exponent: lifted.exponent,
        })
    }

    /// Ordinary derivative.
    pub fn derivative(&self) -> Self {
        Self {
            coeff: self.coeff * self.exponent,
            exponent: self.exponent - 1.0,
        }
    }
}

/// D^α x^p = Γ(1+p)/Γ(1+p−α) · x^{p−α}.
pub fn frac_deriv_monomial(p: f64, alpha: AlphaParam) -> Result<MonomialTerm> {
    let a = alpha.get();
    if a > 1.0 {
        return Err(domain("frac_deriv_monomial", format!("α = {a} outside (0, 1]")));
    }
    if !p.is_finite() || p <= -1.0 {
        return Err(domain("frac_deriv_monomial", format!("p = {p} must be > -1")));
    }
    if 1.0 + p - a <= 0.0 {
        return Err(domain(
            "frac_deriv_monomial",
            format!("1 + p − α = {} is not positive", 1.0 + p - a),
        ));
    }
    let coeff = gamma_pos(1.0 + p)? / gamma_pos(1.0 + p - a)?;
    Ok(MonomialTerm {
        coeff,
        exponent: p - a,
    })
}

/// Finite sum of monomials with strictly increasing exponents and no zero
/// coefficients.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MonomialSum {
    terms: Vec<MonomialTerm>,
}

impl MonomialSum {
    pub fn new(terms: impl IntoIterator<Item = MonomialTerm>) -> Self {
        let mut terms: Vec<MonomialTerm> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
        let mut merged: Vec<MonomialTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if (t.exponent - last.exponent).abs() <= EXPONENT_MERGE_TOL => {
                    last.coeff += t.coeff;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        crate::special::compensated_sum(self.terms.iter().map(|t| t.eval(x)))
    }
}

/// Termwise D^α; constant terms vanish.
pub fn frac_deriv_sum(f: &MonomialSum, alpha: AlphaParam) -> Result<MonomialSum> {
    let mut out = Vec::with_capacity(f.terms.len());
    for t in &f.terms {
        if t.exponent == 0.0 {
            continue;
        }
        let d = frac_deriv_monomial(t.exponent, alpha)?;
        out.push(MonomialTerm {
            coeff: t.coeff * d.coeff,
            exponent: d.exponent,
        });
    }
    Ok(MonomialSum::new(out))
}

/// Both sides of a purported differentiation rule at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuleResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`
    pub residual: f64,
    pub alpha: f64,
    pub x: f64,
}

impl RuleResidual {
    fn new(lhs: f64, rhs: f64, alpha: f64, x: f64) -> Self {
        Self {
            lhs,
            rhs,
            residual: lhs - rhs,
            alpha,
            x,
        }
    }
}

fn rule_args(op: &'static str, alpha: AlphaParam, x: f64) -> Result<f64> {
    let a = alpha.get();
    if a > 1.0 {
        return Err(domain(op, format!("α = {a} outside (0, 1]")));
    }
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(op, format!("x = {x} must be > 0")));
    }
    Ok(a)
}

const IDENTITY: MonomialTerm = MonomialTerm {
    coeff: 1.0,
    exponent: 1.0,
};
const SQRT: MonomialTerm = MonomialTerm {
    coeff: 1.0,
    exponent: 0.5,
};
const SQUARE: MonomialTerm = MonomialTerm {
    coeff: 1.0,
    exponent: 2.0,
};

/// D^α(fg) against g D^α f + f D^α g for f = g = x^{1/2}.
pub fn leibniz_residual(alpha: AlphaParam, x: f64) -> Result<RuleResidual> {
    let a = rule_args("leibniz_residual", alpha, x)?;
    let product = SQRT.mul(&SQRT);
    let lhs = frac_deriv_monomial(product.exponent, alpha)?;
    let d_sqrt = frac_deriv_monomial(SQRT.exponent, alpha)?;
    let half = SQRT.mul(&d_sqrt);
    let rhs = MonomialSum::new([half, half]);
    Ok(RuleResidual::new(lhs.eval(x), rhs.eval(x), a, x))
}

/// D^α(f∘u) against f'(u)·D^α u for f(u) = u², u(x) = x^{1/2}.
pub fn chain1_residual(alpha: AlphaParam, x: f64) -> Result<RuleResidual> {
    let a = rule_args("chain1_residual", alpha, x)?;
    let composed = SQUARE.compose(&SQRT)?;
    let lhs = frac_deriv_monomial(composed.exponent, alpha)?;
    let outer_slope = SQUARE.derivative().compose(&SQRT)?;
    let rhs = outer_slope.mul(&frac_deriv_monomial(SQRT.exponent, alpha)?);
    Ok(RuleResidual::new(lhs.eval(x), rhs.eval(x), a, x))
}

/// D^α(f∘u) against (D^α_u f)(u(x))·(u'(x))^α for f(u) = u^{1/2}, u(x) = x².
pub fn chain2_residual(alpha: AlphaParam, x: f64) -> Result<RuleResidual> {
    let a = rule_args("chain2_residual", alpha, x)?;
    let composed = SQRT.compose(&SQUARE)?;
    debug_assert_eq!(composed, IDENTITY);
    let lhs = frac_deriv_monomial(composed.exponent, alpha)?;
    let outer = frac_deriv_monomial(SQRT.exponent, alpha)?.compose(&SQUARE)?;
    let slope_pow = SQUARE.derivative().powf(a)?;
    let rhs = outer.mul(&slope_pow);
    Ok(RuleResidual::new(lhs.eval(x), rhs.eval(x), a, x))
}

/// Result of the termwise eigenfunction check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResidual {
    /// |D^α(truncated series) − λ E_α(λx^α)|
    pub residual: f64,
    /// truncation tail of the differentiated series plus evaluation error
    pub bound: f64,
    pub terms: usize,
}

impl EigenResidual {
    pub fn within_bound(&self) -> bool {
        self.residual <= self.bound
    }
}

/// Applies D^α termwise to the K-term truncation of E_α(λx^α) and compares
/// with λ E_α(λx^α).
///
/// The truncation Σ_{k<K} λ^k x^{kα}/Γ(1+kα) is represented as two real
/// [`MonomialSum`]s (real and imaginary coefficients). After D^α the result
/// is λ times the (K−1)-term truncation, so the residual is bounded by
/// |λ| times the series tail from index K−1 on.
pub fn eigen_relation_residual(
    alpha: AlphaParam,
    lambda: ComplexValue,
    x: f64,
    terms: usize,
) -> Result<EigenResidual> {
    let a = alpha.get();
    if a > 1.0 {
        return Err(domain("eigen_relation_residual", format!("α = {a} outside (0, 1]")));
    }
    if !(x > 0.0 && x <= 3.0) {
        return Err(domain("eigen_relation_residual", format!("x = {x} outside (0, 3]")));
    }
    if terms == 0 || terms > 200 {
        return Err(domain("eigen_relation_residual", format!("K = {terms} outside [1, 200]")));
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(domain("eigen_relation_residual", "λ must be finite"));
    }

    let mut re_terms = Vec::with_capacity(terms);
    let mut im_terms = Vec::with_capacity(terms);
    let mut lambda_pow = ComplexValue::new(1.0, 0.0);
    for k in 0..terms {
        let inv_gamma = 1.0 / gamma_pos(1.0 + k as f64 * a)?;
        let exponent = k as f64 * a;
        re_terms.push(MonomialTerm::new(lambda_pow.re * inv_gamma, exponent)?);
        im_terms.push(MonomialTerm::new(lambda_pow.im * inv_gamma, exponent)?);
        lambda_pow *= lambda;
    }
    let re_sum = MonomialSum::new(re_terms);
    let im_sum = MonomialSum::new(im_terms);
    let d_re = frac_deriv_sum(&re_sum, alpha)?;
    let d_im = frac_deriv_sum(&im_sum, alpha)?;
    let lhs = ComplexValue::new(d_re.eval(x), d_im.eval(x));

    let ml = MittagLeffler::new(alpha);
    let z = lambda * x.powf(a);
    let cfg = EvalConfig::default();
    let series = ml.eval(z, &cfg)?;
    let rhs = lambda * series.value;
    let residual = (lhs - rhs).norm();

    // Tail of Σ_{k ≥ K−1} |z|^k/Γ(1+kα), closed geometrically once the
    // term ratio drops below TAIL_RATIO.
    let r = z.norm();
    let k0 = terms - 1;
    let mut mag = r.powi(k0 as i32) * ml.coefficient(k0).to_f64();
    let mut tail = 0.0;
    let mut k = k0;
    while mag > 0.0 {
        let next = mag * r * ml.coefficient(k + 1).to_f64() / ml.coefficient(k).to_f64();
        tail += mag;
        if next <= TAIL_RATIO * mag {
            tail += next / (1.0 - TAIL_RATIO);
            break;
        }
        mag = next;
        k += 1;
        if k > k0 + 10_000 || !mag.is_finite() {
            tail = f64::INFINITY;
            break;
        }
    }

    // two gamma ratios per term, and powf of a rounded exponent
    let ln_x = x.ln().abs();
    let mut eval_err = 0.0;
    for t in d_re.terms().iter().chain(d_im.terms()) {
        let per_term = 3.0 * GAMMA_REL_ERR + (8.0 + 4.0 * t.exponent.abs() * ln_x) * UNIT_ROUNDOFF;
        eval_err += t.eval(x).abs() * per_term;
    }
    let bound = lambda.norm() * (tail + series.err_bound) + eval_err + 4.0 * UNIT_ROUNDOFF * rhs.norm();
    Ok(EigenResidual {
        residual,
        bound,
        terms,
    })
}
