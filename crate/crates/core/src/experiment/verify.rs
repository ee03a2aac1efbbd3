use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{ExponentVector, PSpec};
use crate::extremal::{derive_seed, lhs_for_family};
use crate::form::{MultilinearForm, PartitionSpec, ScalarField};
use crate::norm::{diagonal_norm, estimate_norm, NormConfig, NormEstimate};
use crate::theory::{mixed_constant_bound, unified_constant_bound, ConstantBound};

use super::config::{check_exponent, ExperimentConfig};

/// Slack on the ratio when the norm is exact.
pub const CERTIFIED_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    /// Ratio above the constant with an exact norm.
    Violated,
    /// Ratio above the constant, but the norm is only a lower bound.
    Inconclusive,
}

/// One trial of `lhs <= C ‖T‖`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub form_id: String,
    pub field: ScalarField,
    pub m: usize,
    pub k: usize,
    pub dims: Vec<usize>,
    pub pspec: PSpec,
    /// One-based block label of each slot, `;`-separated.
    pub partition: String,
    pub q: ExponentVector,
    pub lhs: f64,
    pub norm: NormEstimate,
    pub constant_bound: ConstantBound,
    pub ratio: f64,
    pub holds: bool,
    pub tol: f64,
    pub outcome: Outcome,
}

/// A verification case: shape, exponents and how many random forms to draw.
#[derive(Clone, Debug)]
pub struct VerifyCase {
    pub field: ScalarField,
    pub n: usize,
    pub pspec: PSpec,
    pub partition: PartitionSpec,
    pub q: ExponentVector,
    pub trials: usize,
}

impl VerifyCase {
    pub fn m(&self) -> usize {
        self.partition.m()
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    /// Constant for this case: the best unified bound for a flat exponent,
    /// the mixed `(1, 2, ..., 2)` bound otherwise.
    pub fn constant(&self) -> Result<ConstantBound> {
        check_exponent(self.k(), &self.pspec, &self.q)?;
        if self.q.common().is_some() {
            Ok(unified_constant_bound(&self.partition, &self.pspec, self.field)?.best)
        } else {
            Ok(mixed_constant_bound(self.k(), self.field))
        }
    }
}

/// Checks one form against the case's inequality.
pub fn verify_form(
    form_id: String,
    form: &MultilinearForm,
    case: &VerifyCase,
    constant: ConstantBound,
    cfg: &NormConfig,
) -> Result<VerificationRecord> {
    let lhs = lhs_for_family(form, &case.partition, &case.q)?;
    let exact_route = form.field() == ScalarField::Real && form.pspec().all_infinite();
    let norm = if form.is_diagonal() && !exact_route && form.dims().len() > 1 {
        diagonal_norm(form)?
    } else {
        estimate_norm(form, cfg)?
    };
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / norm.value };
    let tol = if norm.certified { CERTIFIED_TOL } else { 0.0 };
    let holds = ratio <= constant.value + tol;
    let outcome = match (holds, norm.certified) {
        (true, _) => Outcome::Holds,
        (false, true) => Outcome::Violated,
        (false, false) => Outcome::Inconclusive,
    };
    Ok(VerificationRecord {
        form_id,
        field: form.field(),
        m: form.m(),
        k: case.k(),
        dims: form.dims().to_vec(),
        pspec: form.pspec().clone(),
        partition: case.partition.compact(),
        q: case.q.clone(),
        lhs,
        norm,
        constant_bound: constant,
        ratio,
        holds,
        tol,
        outcome,
    })
}

/// Runs `case.trials` Gaussian forms. Trial `t` of case `index` draws its
/// coefficients and its ascent starts from seeds derived from
/// `(seed, index, t)`, so the output does not depend on scheduling.
pub fn run_case(
    index: usize,
    case: &VerifyCase,
    seed: u64,
    restarts: usize,
    label: &str,
) -> Result<Vec<VerificationRecord>> {
    if case.trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    let constant = case.constant()?;
    (0..case.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index as u64, 2 * t as u64));
            let form =
                MultilinearForm::gaussian(case.field, vec![case.n; case.m()], case.pspec.clone(), &mut rng)?;
            let norm_cfg = NormConfig::default()
                .with_restarts(restarts)
                .with_seed(derive_seed(seed, index as u64, 2 * t as u64 + 1));
            verify_form(format!("{label}-t{t:03}"), &form, case, constant, &norm_cfg)
        })
        .collect()
}

/// `verify` subcommand: random trials, or the single form in `config.form`.
pub fn run_verify(config: &ExperimentConfig) -> Result<Vec<VerificationRecord>> {
    if let Some(path) = &config.form {
        let form = MultilinearForm::load(path)?;
        let config = config.with_form(&form)?;
        config.validate()?;
        let case = VerifyCase {
            field: form.field(),
            n: form.dims()[0],
            pspec: form.pspec().clone(),
            partition: config.partition()?,
            q: config.q()?,
            trials: 1,
        };
        let constant = case.constant()?;
        let norm_cfg = NormConfig::default()
            .with_restarts(config.restarts())
            .with_seed(config.seed());
        let id = path
            .file_stem()
            .map_or_else(|| "form".to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(vec![verify_form(id, &form, &case, constant, &norm_cfg)?]);
    }
    config.validate()?;
    let case = VerifyCase {
        field: config.field(),
        n: config.n(),
        pspec: config.pspec()?,
        partition: config.partition()?,
        q: config.q()?,
        trials: config.trials(),
    };
    run_case(0, &case, config.seed(), config.restarts(), "verify")
}
