//! Figure data: the unit product, the fractional cosine and the semigroup
//! difference, as CSV tables with optional SVG renderings.

use std::fmt::Write as _;

use mlf_core::audit::{semigroup_residual_grid, GridAxis};
use mlf_core::mittag_leffler::{cos_via_duplication, AlphaParam, MittagLeffler};
use mlf_core::special::{ComplexValue, EvalConfig};
use rayon::prelude::*;

use crate::parse::GridSpec;
use crate::svg::{heatmaps, line_chart, Panel, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Fig1,
    Fig2,
    Fig3,
}

impl Which {
    pub fn default_alphas(self) -> Vec<f64> {
        match self {
            Which::Fig1 | Which::Fig2 => vec![0.25, 0.5, 0.75, 1.0],
            Which::Fig3 => vec![0.25, 0.75],
        }
    }

    pub fn default_grid(self) -> GridSpec {
        match self {
            Which::Fig1 => GridSpec { start: 0.0, stop: 6.0, step: 0.01 },
            Which::Fig2 => GridSpec { start: 0.01, stop: 1.0, step: 0.01 },
            Which::Fig3 => GridSpec { start: 0.0, stop: 2.0, step: 0.02 },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::Fig1 => "fig1",
            Which::Fig2 => "fig2",
            Which::Fig3 => "fig3",
        }
    }
}

pub struct Figure {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub svg: String,
}

impl Figure {
    /// RFC 4180 style table with shortest round-trip numbers.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push_str("\r\n");
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            let _ = write!(out, "{}\r\n", cells.join(","));
        }
        out
    }
}

fn axis(g: GridSpec) -> mlf_core::Result<Vec<f64>> {
    Ok(GridAxis::new(g.start, g.stop, g.step)?.points())
}

fn trig_alphas(alphas: &[f64]) -> mlf_core::Result<Vec<AlphaParam>> {
    alphas.iter().map(|&a| AlphaParam::trig(a)).collect()
}

fn columns_to_figure(
    xs: Vec<f64>,
    alphas: &[f64],
    cols: Vec<Vec<f64>>,
    title: &str,
    y_label: &str,
) -> Figure {
    let mut header = vec!["x".to_string()];
    header.extend(alphas.iter().map(|a| format!("alpha={a}")));
    let rows = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| std::iter::once(x).chain(cols.iter().map(|c| c[i])).collect())
        .collect();
    let series: Vec<Series> = alphas
        .iter()
        .zip(&cols)
        .map(|(a, c)| Series {
            label: format!("α = {a}"),
            points: xs.iter().copied().zip(c.iter().copied()).collect(),
        })
        .collect();
    Figure {
        header,
        rows,
        svg: line_chart(&series, title, "x", y_label),
    }
}

/// p(x, α) = cos_α(x^α)² + sin_α(x^α)².
pub fn fig1(alphas: &[f64], grid: GridSpec) -> mlf_core::Result<Figure> {
    let xs = axis(grid)?;
    let cfg = EvalConfig::default();
    let cols = trig_alphas(alphas)?
        .into_iter()
        .map(|a| {
            let ml = MittagLeffler::new(a);
            xs.par_iter()
                .map(|&x| Ok(ml.frac_trig(x, &cfg)?.modulus_squared().0))
                .collect::<mlf_core::Result<Vec<f64>>>()
        })
        .collect::<mlf_core::Result<Vec<_>>>()?;
    Ok(columns_to_figure(xs, alphas, cols, "E_α(ix^α)·E_α(−ix^α)", "p(x, α)"))
}

/// cos_α(x^α) = E_{2α}(−x^{2α}).
pub fn fig2(alphas: &[f64], grid: GridSpec) -> mlf_core::Result<Figure> {
    let xs = axis(grid)?;
    let cfg = EvalConfig::default();
    let cols = trig_alphas(alphas)?
        .into_iter()
        .map(|a| {
            xs.par_iter()
                .map(|&x| Ok(cos_via_duplication(a, x, &cfg)?.value.re))
                .collect::<mlf_core::Result<Vec<f64>>>()
        })
        .collect::<mlf_core::Result<Vec<_>>>()?;
    Ok(columns_to_figure(xs, alphas, cols, "cos_α(x^α)", "cos_α(x^α)"))
}

/// E_α(λ(x+y)^α) − E_α(λx^α)E_α(λy^α) on [0, stop]²; the grid must start
/// at 0. Complex λ adds an imaginary-part column per order.
pub fn fig3(alphas: &[f64], lambda: ComplexValue, grid: GridSpec) -> mlf_core::Result<Figure> {
    if grid.start != 0.0 {
        return Err(mlf_core::Error::Invalid("fig3 grids start at 0".into()));
    }
    let complex = lambda.im != 0.0;
    let grids = alphas
        .iter()
        .map(|&a| semigroup_residual_grid(a, lambda, grid.stop, grid.step))
        .collect::<mlf_core::Result<Vec<_>>>()?;
    let mut header = vec!["x".to_string(), "y".to_string()];
    for a in alphas {
        header.push(format!("alpha={a}"));
        if complex {
            header.push(format!("alpha={a}_im"));
        }
    }
    let first = &grids[0];
    let rows = (0..first.len())
        .map(|i| {
            let mut row = first.coords(i);
            for g in &grids {
                row.push(g.signed[i].re);
                if complex {
                    row.push(g.signed[i].im);
                }
            }
            row
        })
        .collect();
    let panels: Vec<Panel> = alphas
        .iter()
        .zip(&grids)
        .map(|(a, g)| Panel {
            label: format!("α = {a}"),
            values: g.signed.iter().map(|d| d.re).collect(),
            n: g.axes[1].len(),
            extent: (0.0, g.axes[0].point(g.axes[0].len() - 1)),
        })
        .collect();
    let title = format!("E_α(λ(x+y)^α) − E_α(λx^α)E_α(λy^α), λ = {lambda}");
    Ok(Figure {
        header,
        rows,
        svg: heatmaps(&panels, &title, "x", "y"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_order_columns() {
        let f = fig1(&[1.0], Which::Fig1.default_grid()).unwrap();
        assert_eq!(f.rows.len(), 601);
        assert!(f.rows.iter().all(|r| (r[1] - 1.0).abs() <= 1e-10));
        let f = fig2(&[1.0], Which::Fig2.default_grid()).unwrap();
        assert_eq!(f.rows.len(), 100);
        assert!(f.rows.iter().all(|r| (r[1] - r[0].cos()).abs() <= 1e-10));
    }

    #[test]
    fn semigroup_table_shape() {
        let g = GridSpec { start: 0.0, stop: 2.0, step: 0.5 };
        let f = fig3(&[0.25], ComplexValue::new(1.0, 0.0), g).unwrap();
        assert_eq!(f.header, ["x", "y", "alpha=0.25"]);
        assert_eq!(f.rows.len(), 25);
        let csv = f.to_csv();
        assert!(csv.starts_with("x,y,alpha=0.25\r\n0.0,0.0,0.0\r\n"));
        let g = GridSpec { start: 0.5, ..g };
        assert!(fig3(&[0.25], ComplexValue::new(1.0, 0.0), g).is_err());
    }
}
