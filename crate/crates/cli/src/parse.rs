//! Flag value syntax: numbers, `start:stop:step` grids, `min:max` windows
//! and complex numbers written `re,im`. Lists split on commas in clap.

use mlf_core::special::ComplexValue;

fn number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let v: f64 = t.parse().map_err(|_| format!("malformed number `{t}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{t}` is not finite"))
    }
}

pub fn parse_number(s: &str) -> Result<f64, String> {
    number(s)
}

/// `start:stop:step` with start ≤ stop and step > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("grid `{s}` must read start:stop:step"));
    };
    let g = GridSpec {
        start: number(a)?,
        stop: number(b)?,
        step: number(c)?,
    };
    if !(g.step > 0.0) {
        return Err(format!("grid step must be > 0, got {}", g.step));
    }
    if g.stop < g.start {
        return Err(format!("grid bounds out of order: {} > {}", g.start, g.stop));
    }
    Ok(g)
}

/// `m_min:m_max` with m_min < m_max.
pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("window `{s}` must read min:max"));
    };
    let (lo, hi) = (number(a)?, number(b)?);
    if !(lo < hi) {
        return Err(format!("window bounds out of order: {lo} >= {hi}"));
    }
    Ok((lo, hi))
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(ComplexValue::new(number(re)?, 0.0)),
        [re, im] => Ok(ComplexValue::new(number(re)?, number(im)?)),
        _ => Err(format!("complex value `{s}` must read re or re,im")),
    }
}
