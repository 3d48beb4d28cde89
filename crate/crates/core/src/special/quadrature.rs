//! Globally adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol·|I|)`. Semi-infinite integrals are
//! mapped onto [0, 1] by the caller (see [`integrate_half_line`]).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::series::UNIT_ROUNDOFF;
use crate::error::{Error, Result};

/// Kronrod abscissae on [−1, 1], nonnegative half, largest first.
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions > 0) {
            return Err(Error::Invalid(format!(
                "quadrature tolerances must be positive, got {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err: f64,
    pub subdivisions: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WK[j] * (f1 + f2);
        abs_sum += WK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs() + 50.0 * UNIT_ROUNDOFF * abs_sum * half.abs();
    Panel { a, b, value, err }
}

/// ∫_a^b f.
///
/// The returned `err` is the sum of the per-panel |K15 − G7| estimates plus a
/// rounding allowance. Fails with [`Error::Quadrature`] when the tolerance is
/// not met after `max_subdivisions` bisections or an integrand value is not
/// finite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Invalid("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            err: 0.0,
            subdivisions: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    heap.push(gauss_kronrod(&f, a, b));
    let mut subdivisions = 0;
    loop {
        let (value, err) = totals(&heap);
        if !(value.is_finite() && err.is_finite()) {
            return Err(Error::Quadrature {
                estimate: f64::INFINITY,
                subdivisions,
            });
        }
        if err <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                err,
                subdivisions,
            });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::Quadrature {
                estimate: err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gauss_kronrod(&f, worst.a, mid));
        heap.push(gauss_kronrod(&f, mid, worst.b));
        subdivisions += 1;
    }
}

// Summation in a fixed order keeps the result independent of heap layout.
fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = super::series::compensated_sum(panels.iter().map(|p| p.value));
    let err: f64 = panels.iter().map(|p| p.err).sum();
    (value, err)
}

/// ∫_0^∞ f, computed as ∫_0^1 [f(u) + f(1/u)/u²] du.
///
/// `f` must decay faster than 1/s at infinity.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, cfg: &QuadratureConfig) -> Result<QuadResult> {
    integrate(
        |u| {
            let inv = 1.0 / u;
            f(u) + f(inv) * inv * inv
        },
        0.0,
        1.0,
        cfg,
    )
}
