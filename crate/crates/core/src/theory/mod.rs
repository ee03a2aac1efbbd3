//! Exponent formulas, admissibility tests and constant bounds for the
//! Bohnenblust–Hille and Hardy–Littlewood family of inequalities.

mod constants;
mod exponents;

pub use constants::{
    bh_constant_bound, bh_envelope, khinchin_base, mixed_constant_bound, unified_constant_bound,
    ConstantBound, ConstantReport, FormulaId,
};
pub use exponents::{
    bh_partial_admissible, classify, hl_admissible, hl_exponent, hl_exponent_uniform,
    interpolate_exponents, interpolation_endpoints, ksz_alpha, ksz_norm_exponent, lambda0,
    optimality_lower_bounds, LowerBounds, Regime, RegimeClassification,
};
