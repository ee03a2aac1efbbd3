//! Operator norm `‖T‖ = sup |T(x_1, ..., x_m)|` over the product of unit balls.
//!
//! Two routes: exact enumeration of sign vertices for real forms on
//! `ℓ_∞ × ... × ℓ_∞`, and seeded multi-start alternating ascent for
//! everything else. Ascent values are lower bounds and are never marked
//! certified. Diagonal forms additionally have a closed form (see
//! [`diagonal`]).

mod ascent;
mod diagonal;
mod dual;
mod enumerate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{MultilinearForm, ScalarField};
use crate::tensor::Scalar;

pub use ascent::{alternating_ascent, random_start, AscentRun};
pub use diagonal::{diagonal_norm, upper_bound_diagonal};
pub use dual::maximize_slot;
pub use enumerate::exact_sign_norm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    ExactSignEnum,
    AlternatingAscent,
    DiagonalClosedForm,
}

impl std::fmt::Display for NormMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormMethod::ExactSignEnum => "exact-sign-enum",
            NormMethod::AlternatingAscent => "alternating-ascent",
            NormMethod::DiagonalClosedForm => "diagonal-closed-form",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: NormMethod,
    /// True only when `value` is the exact norm.
    pub certified: bool,
    pub restarts_used: usize,
    pub iterations: usize,
    /// Arguments attaining `value`, one vector per slot.
    #[serde(skip)]
    pub witness: Vec<Vec<Scalar>>,
}

/// When to use exact sign enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExactMode {
    /// Enumerate whenever the form qualifies and fits the budget.
    #[default]
    Auto,
    Off,
    /// Enumerate or fail.
    Forced,
}

#[derive(Clone, Debug)]
pub struct NormConfig {
    pub restarts: usize,
    /// Maximum ascent sweeps per restart.
    pub max_iters: usize,
    /// Relative improvement below which a restart stops.
    pub tol: f64,
    pub seed: u64,
    pub exact: ExactMode,
    /// Maximum number of sign patterns the exact route may visit.
    pub enum_budget: u64,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig {
            restarts: 32,
            max_iters: 200,
            tol: 1e-12,
            seed: 0,
            exact: ExactMode::Auto,
            enum_budget: 1 << 22,
        }
    }
}

impl NormConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_exact(mut self, exact: ExactMode) -> Self {
        self.exact = exact;
        self
    }
}

/// Number of sign patterns exact enumeration would need, as a power of two:
/// `Σ_{j<m} dims_j` (the last slot is handled in closed form).
pub fn enumeration_log2(form: &MultilinearForm) -> u64 {
    let dims = form.dims();
    dims[..dims.len() - 1].iter().map(|&n| n as u64).sum()
}

fn exact_applicable(form: &MultilinearForm) -> bool {
    form.field() == ScalarField::Real && form.pspec().all_infinite()
}

fn fits_budget(form: &MultilinearForm, budget: u64) -> bool {
    let log2 = enumeration_log2(form);
    log2 < 63 && (1u64 << log2) <= budget
}

pub fn estimate_norm(form: &MultilinearForm, cfg: &NormConfig) -> Result<NormEstimate> {
    if cfg.restarts == 0 {
        return Err(Error::arg("norm estimation needs at least one restart"));
    }
    match cfg.exact {
        ExactMode::Off => ascent::multi_start(form, cfg),
        ExactMode::Auto => {
            if exact_applicable(form) && fits_budget(form, cfg.enum_budget) {
                exact_sign_norm(form)
            } else {
                ascent::multi_start(form, cfg)
            }
        }
        ExactMode::Forced => {
            if !exact_applicable(form) {
                return Err(Error::Unsupported(
                    "exact enumeration needs a real form with every p_j = inf".into(),
                ));
            }
            if !fits_budget(form, cfg.enum_budget) {
                return Err(Error::Resource(format!(
                    "exact enumeration needs 2^{} sign patterns, budget is {}",
                    enumeration_log2(form),
                    cfg.enum_budget
                )));
            }
            exact_sign_norm(form)
        }
    }
}
