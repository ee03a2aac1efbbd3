//! Extremal families used to test exponent optimality: random sign forms and
//! diagonal power forms, with log-log growth probes.

mod ksz;
mod probe;
mod zalduendo;

pub use ksz::{ksz_form, random_sign_form};
pub use probe::{
    fit_loglog_slope, lhs_flat, lhs_for_family, ratio_probe, ratio_probe_with_threshold,
    FamilySample, FormFamily, KszFamily, LogLogFit, ProbePoint, ProbeResult, Verdict,
    ZalduendoFamily, ZalduendoMode, GROWTH_THRESHOLD,
};
pub use zalduendo::{
    zalduendo_beta, zalduendo_coefficients, zalduendo_form, zalduendo_lhs, zalduendo_power_sum,
};

pub(crate) use ksz::derive_seed;
