//! Sampled residuals of the unit-product and semigroup identities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::ResidualStats;
use crate::error::{domain, Result};
use crate::mittag_leffler::{AlphaParam, MittagLeffler};
use crate::special::{ComplexValue, EvalConfig, UNIT_ROUNDOFF};

/// Evenly spaced samples `start, start + step, …` not exceeding `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridAxis {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(domain("GridAxis", "bounds and step must be finite"));
        }
        if !(step > 0.0) {
            return Err(domain("GridAxis", format!("step = {step} must be > 0")));
        }
        if stop < start {
            return Err(domain("GridAxis", format!("stop {stop} < start {start}")));
        }
        Ok(Self { start, stop, step })
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step * (1.0 + 1e-12)).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        (self.start + i as f64 * self.step).min(self.stop)
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// Residual magnitudes over a 1-D or 2-D grid (row-major, first axis outer).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualGrid {
    pub axes: Vec<GridAxis>,
    /// signed residual; real grids leave the imaginary part at zero
    pub signed: Vec<ComplexValue>,
    /// |signed|
    pub values: Vec<f64>,
    pub err_bounds: Vec<f64>,
    /// err_bound ≤ value
    pub certified: Vec<bool>,
    /// max over certified points, 0 when none is certified
    pub sup_norm: f64,
    /// coordinates attaining `sup_norm`
    pub argmax: Option<Vec<f64>>,
    /// max over all points
    pub sup_all: f64,
    pub argmax_all: Vec<f64>,
    pub mean: f64,
    pub uniform_err_bound: f64,
}

impl ResidualGrid {
    pub fn from_samples(
        axes: Vec<GridAxis>,
        signed: Vec<ComplexValue>,
        err_bounds: Vec<f64>,
    ) -> Result<Self> {
        let n: usize = axes.iter().map(GridAxis::len).product();
        if axes.is_empty() || axes.len() > 2 || signed.is_empty() {
            return Err(domain("ResidualGrid", "needs one or two axes and at least one sample"));
        }
        if signed.len() != n || err_bounds.len() != n {
            return Err(domain("ResidualGrid", "sample count does not match the axes"));
        }
        let values: Vec<f64> = signed.iter().map(|d| d.norm()).collect();
        let certified: Vec<bool> = values.iter().zip(&err_bounds).map(|(v, e)| e <= v).collect();
        let mut grid = Self {
            axes,
            signed,
            values,
            err_bounds,
            certified,
            sup_norm: 0.0,
            argmax: None,
            sup_all: 0.0,
            argmax_all: Vec::new(),
            mean: 0.0,
            uniform_err_bound: 0.0,
        };
        let coords: Vec<Vec<f64>> = (0..n).map(|i| grid.coords(i)).collect();
        let all = ResidualStats::from_samples(coords.iter().map(Vec::as_slice).zip(grid.values.iter().copied()))
            .expect("nonempty");
        grid.sup_all = all.sup;
        grid.argmax_all = all.argmax;
        grid.mean = all.mean;
        let cert = ResidualStats::from_samples(
            coords
                .iter()
                .zip(&grid.values)
                .zip(&grid.certified)
                .filter(|(_, &c)| c)
                .map(|((p, &v), _)| (p.as_slice(), v)),
        );
        if let Some(c) = cert {
            grid.sup_norm = c.sup;
            grid.argmax = Some(c.argmax);
        }
        grid.uniform_err_bound = grid.err_bounds.iter().copied().fold(0.0, f64::max);
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn coords(&self, idx: usize) -> Vec<f64> {
        match self.axes.as_slice() {
            [a] => vec![a.point(idx)],
            [a, b] => {
                let m = b.len();
                vec![a.point(idx / m), b.point(idx % m)]
            }
            _ => unreachable!("grids have one or two axes"),
        }
    }

    /// Statistics over every point.
    pub fn stats(&self) -> ResidualStats {
        ResidualStats {
            sup: self.sup_all,
            mean: self.mean,
            argmax: self.argmax_all.clone(),
        }
    }

    /// Statistics over certified points, falling back to [`Self::stats`]
    /// when none is certified.
    pub fn certified_stats(&self) -> ResidualStats {
        match &self.argmax {
            Some(at) => ResidualStats {
                sup: self.sup_norm,
                mean: self.mean,
                argmax: at.clone(),
            },
            None => self.stats(),
        }
    }
}

fn check_trig_alpha(op: &'static str, alpha: f64) -> Result<AlphaParam> {
    AlphaParam::trig(alpha).map_err(|_| domain(op, format!("α = {alpha} outside (0, 1]")))
}

/// |p(x, α) − 1| with p = cos_α(x^α)² + sin_α(x^α)², x ∈ [0, x_max].
pub fn product_residual_grid(alpha: f64, x_max: f64, step: f64) -> Result<ResidualGrid> {
    let a = check_trig_alpha("product_residual_grid", alpha)?;
    if !(step > 0.0 && step <= x_max && x_max <= 6.0) {
        return Err(domain(
            "product_residual_grid",
            format!("need 0 < step ≤ x_max ≤ 6, got step {step}, x_max {x_max}"),
        ));
    }
    let axis = GridAxis::new(0.0, x_max, step)?;
    let ml = MittagLeffler::new(a);
    let cfg = EvalConfig::default();
    let samples = axis
        .points()
        .into_par_iter()
        .map(|x| -> Result<(ComplexValue, f64)> {
            let pair = ml.frac_trig(x, &cfg)?;
            let (p, bound) = pair.modulus_squared();
            let err = if pair.converged { bound + UNIT_ROUNDOFF } else { f64::INFINITY };
            Ok((ComplexValue::new(p - 1.0, 0.0), err))
        })
        .collect::<Result<Vec<_>>>()?;
    let (signed, errs) = samples.into_iter().unzip();
    ResidualGrid::from_samples(vec![axis], signed, errs)
}

/// E_α(λ(x+y)^α) − E_α(λx^α)·E_α(λy^α) over [0, xy_max]².
pub fn semigroup_residual_grid(
    alpha: f64,
    lambda: ComplexValue,
    xy_max: f64,
    step: f64,
) -> Result<ResidualGrid> {
    let a = check_trig_alpha("semigroup_residual_grid", alpha)?;
    if !(step > 0.0 && step <= xy_max && xy_max.is_finite()) {
        return Err(domain(
            "semigroup_residual_grid",
            format!("need 0 < step ≤ xy_max, got step {step}, xy_max {xy_max}"),
        ));
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(domain("semigroup_residual_grid", "λ must be finite"));
    }
    let axis = GridAxis::new(0.0, xy_max, step)?;
    let ml = MittagLeffler::new(a);
    let cfg = EvalConfig::default();
    let pts = axis.points();
    let singles = pts
        .par_iter()
        .map(|&x| ml.eval(lambda * x.powf(a.get()), &cfg))
        .collect::<Result<Vec<_>>>()?;
    let m = pts.len();
    let samples = (0..m * m)
        .into_par_iter()
        .map(|idx| -> Result<(ComplexValue, f64)> {
            let (i, j) = (idx / m, idx % m);
            let joint = ml.eval(lambda * (pts[i] + pts[j]).powf(a.get()), &cfg)?;
            let (ex, ey) = (&singles[i], &singles[j]);
            let prod = ex.value * ey.value;
            let diff = joint.value - prod;
            let err = if joint.converged && ex.converged && ey.converged {
                joint.err_bound
                    + ex.value.norm() * ey.err_bound
                    + ey.value.norm() * ex.err_bound
                    + ex.err_bound * ey.err_bound
                    + 4.0 * UNIT_ROUNDOFF * (joint.value.norm() + ex.value.norm() * ey.value.norm())
            } else {
                f64::INFINITY
            };
            Ok((diff, err))
        })
        .collect::<Result<Vec<_>>>()?;
    let (signed, errs) = samples.into_iter().unzip();
    ResidualGrid::from_samples(vec![axis, axis], signed, errs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_counts() {
        assert_eq!(GridAxis::new(0.0, 2.0, 0.02).unwrap().len(), 101);
        assert_eq!(GridAxis::new(0.0, 6.0, 0.01).unwrap().len(), 601);
        assert_eq!(GridAxis::new(0.0, 1.0, 0.3).unwrap().len(), 4);
        assert_eq!(GridAxis::new(0.0, 1.0, 0.3).unwrap().point(3), 0.8999999999999999);
        assert!(GridAxis::new(0.0, 1.0, 0.0).is_err());
        assert!(GridAxis::new(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn grid_rejects_empty_and_mismatched() {
        let axis = GridAxis::new(0.0, 1.0, 0.5).unwrap();
        assert!(ResidualGrid::from_samples(vec![axis], vec![], vec![]).is_err());
        assert!(ResidualGrid::from_samples(vec![], vec![ComplexValue::new(0.0, 0.0)], vec![0.0]).is_err());
        let one = vec![ComplexValue::new(0.0, 0.0)];
        assert!(ResidualGrid::from_samples(vec![axis], one, vec![0.0]).is_err());
    }

    #[test]
    fn product_order_one_vanishes() {
        let g = product_residual_grid(1.0, 6.0, 0.01).unwrap();
        assert_eq!(g.len(), 601);
        assert!(g.sup_all <= 1e-10, "{}", g.sup_all);
        assert_eq!(g.values[0], 0.0);
    }

    #[test]
    fn product_half_order_point() {
        let g = product_residual_grid(0.5, 1.0, 0.5).unwrap();
        // 1 − e^{−2} − (2/√π·D(1))², mpmath
        assert!((g.values[2] - 0.496_024_237_000_802_9).abs() < 1e-12);
        assert!(g.certified[2]);
        assert_eq!(g.values[0], 0.0);
    }

    #[test]
    fn semigroup_axis_lines_vanish() {
        let g = semigroup_residual_grid(0.75, ComplexValue::new(1.0, 0.0), 2.0, 0.25).unwrap();
        let m = g.axes[1].len();
        for i in 0..m {
            assert_eq!(g.values[i * m], 0.0);
            assert_eq!(g.values[i], 0.0);
        }
        assert!(g.sup_norm >= 1e3 * g.uniform_err_bound);
        let argmax = g.argmax.clone().unwrap();
        let k = g.values.iter().position(|&v| v == g.sup_norm).unwrap();
        assert_eq!(g.coords(k), argmax);
    }

    #[test]
    fn semigroup_order_one_vanishes() {
        let g = semigroup_residual_grid(1.0, ComplexValue::new(1.0, 0.0), 2.0, 0.1).unwrap();
        assert!(g.sup_all <= 1e-10);
    }
}
