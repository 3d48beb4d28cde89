//! Numerical audit of the identities claimed for E_α and the fractional
//! trigonometric functions, and assembly of the machine-readable report.

mod coefficients;
mod grid;
mod identities;
mod report;
pub mod suite;

pub use coefficients::{
    cauchy_coefficient, cauchy_coefficient_dd, series_product_check, CauchyCoefficient, SeriesProductCheck,
    MAX_CAUCHY_INDEX,
};
pub use grid::{product_residual_grid, semigroup_residual_grid, GridAxis, ResidualGrid};
pub use identities::{
    dawson_by_quadrature, inverse_relation_residual, monotonicity_audit, period_search,
    period_shift_residual, InverseResidual, MonotonicityResult, PeriodSearchResult,
    MONOTONE_TOL, PERIOD_CERT_ERR, PERIOD_SCAN_STEP,
};
pub use report::{
    build_report, params, verdict, AuditReport, Check, Expect, ParamValue, Params,
    ResidualStats, Tolerance, Verdict, SCHEMA_VERSION, SEPARATION_FACTOR,
};
