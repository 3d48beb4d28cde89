//! Scalar special functions and the shared series engine.

pub mod double_double;
mod gamma;
mod kummer;
mod quadrature;
mod series;

pub use gamma::{gamma_pos, recip_gamma_dd, GAMMA_OVERFLOW};
pub use kummer::{dawson, kummer_phi, KUMMER_MAX_ABS_X};
pub use quadrature::{integrate, integrate_half_line, QuadResult, QuadratureConfig};
pub use series::{
    compensated_sum, sum_entire_series, CoefficientRule, CompensatedSum, ComplexValue, EvalConfig,
    Precision, SeriesEval, TAIL_RATIO, UNIT_ROUNDOFF,
};
