use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Uniform};
use rayon::prelude::*;

use crate::error::Result;
use crate::exponent::Exponent;
use crate::form::{MultilinearForm, ScalarField};
use crate::mixed_norm::lq_of_magnitudes;
use crate::tensor::Scalar;

use super::dual::maximize_slot;
use super::{NormConfig, NormEstimate, NormMethod};

/// One restart of alternating ascent.
#[derive(Clone, Debug)]
pub struct AscentRun {
    pub value: f64,
    pub witness: Vec<Vec<Scalar>>,
    /// Objective at the start and after each completed sweep.
    pub history: Vec<f64>,
    pub sweeps: usize,
}

/// A random point on the `ℓ_p` unit sphere of dimension `n`.
///
/// Magnitudes follow the generalized normal law `exp(-|t|^p)` and are then
/// normalized; signs (real) or phases (complex) are uniform.
pub fn random_start<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p: Exponent,
    field: ScalarField,
) -> Vec<Scalar> {
    let mags: Vec<f64> = if p.is_infinite() {
        let u = Uniform::new_inclusive(0.0, 1.0);
        (0..n).map(|_| u.sample(rng)).collect()
    } else {
        let pv = p.value();
        let g = Gamma::new(1.0 / pv, 1.0).expect("valid gamma shape");
        (0..n).map(|_| g.sample(rng).powf(1.0 / pv)).collect()
    };
    let norm = lq_of_magnitudes(&mags, p);
    let unit = |a: f64| if norm > 0.0 { a / norm } else { 1.0 };
    mags.iter()
        .map(|&a| {
            let r = unit(a);
            match field {
                ScalarField::Real => {
                    if rng.gen::<bool>() {
                        Scalar::new(r, 0.0)
                    } else {
                        Scalar::new(-r, 0.0)
                    }
                }
                ScalarField::Complex => {
                    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                    Scalar::from_polar(r, theta)
                }
            }
        })
        .collect()
}

/// Block-coordinate ascent: each step replaces one slot by its exact maximizer
/// given the others, so the objective never decreases.
pub fn alternating_ascent(
    form: &MultilinearForm,
    start: Vec<Vec<Scalar>>,
    max_iters: usize,
    tol: f64,
) -> AscentRun {
    let m = form.m();
    let mut xs = start;
    let start_value = form.evaluate(&xs).map(|z| z.norm()).unwrap_or(0.0);
    let mut history = vec![start_value];
    let mut value = start_value;
    let mut sweeps = 0;
    while sweeps < max_iters {
        let before = value;
        for slot in 0..m {
            let c = form.coeffs().contract_all_but(slot, &xs);
            let (x, opt) = maximize_slot(&c, form.pspec().get(slot));
            // the previous x_slot is feasible, so opt can only drop by rounding
            debug_assert!(opt >= value * (1.0 - 1e-12), "ascent decreased: {value} -> {opt}");
            xs[slot] = x;
            value = value.max(opt);
        }
        sweeps += 1;
        history.push(value);
        if value - before <= tol * value.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    AscentRun {
        value,
        witness: xs,
        history,
        sweeps,
    }
}

pub(super) fn multi_start(form: &MultilinearForm, cfg: &NormConfig) -> Result<NormEstimate> {
    let runs: Vec<AscentRun> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            let start = form
                .dims()
                .iter()
                .zip(form.pspec().entries())
                .map(|(&n, &p)| random_start(&mut rng, n, p, form.field()))
                .collect();
            alternating_ascent(form, start, cfg.max_iters, cfg.tol)
        })
        .collect();
    let iterations = runs.iter().map(|r| r.sweeps).sum();
    let mut best = &runs[0];
    for run in &runs[1..] {
        if run.value > best.value {
            best = run;
        }
    }
    let value = form.evaluate(&best.witness)?.norm();
    Ok(NormEstimate {
        value,
        method: NormMethod::AlternatingAscent,
        certified: false,
        restarts_used: cfg.restarts,
        iterations,
        witness: best.witness.clone(),
    })
}
