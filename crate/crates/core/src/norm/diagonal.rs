use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Frac, PSpec};
use crate::form::MultilinearForm;
use crate::mixed_norm::lq_of_magnitudes;
use crate::tensor::Scalar;

use super::{NormEstimate, NormMethod};

/// `ρ = (1 - |1/p|)^{-1}`, or `None` when `|1/p| >= 1`.
fn holder_exponent(pspec: &PSpec) -> Option<Exponent> {
    let slack = Frac::ONE - pspec.inv_sum();
    if !Frac::ZERO.lt(slack) {
        return None;
    }
    Exponent::from_recip(slack).ok()
}

/// Hölder upper bound `‖c‖_ρ`, `ρ = (1 - |1/p|)^{-1}`, on the norm of the
/// diagonal form with coefficients `diag`.
pub fn upper_bound_diagonal(diag: &[Scalar], pspec: &PSpec) -> Result<f64> {
    let rho = holder_exponent(pspec).ok_or_else(|| {
        Error::hypothesis(format!(
            "the diagonal bound needs |1/p| < 1, got |1/p| = {}",
            pspec.inv_sum()
        ))
    })?;
    let mags: Vec<f64> = diag.iter().map(|z| z.norm()).collect();
    Ok(lq_of_magnitudes(&mags, rho))
}

/// Exact norm of a diagonal form, with a witness attaining it.
///
/// For `|1/p| < 1` the norm is `‖c‖_ρ` and is attained at
/// `x^{(j)}_i = (|c_i| / ‖c‖_ρ)^{ρ/p_j}` (phases on the first slot).
/// For `|1/p| >= 1` it is `max |c_i|`, attained at a basis vector.
pub fn diagonal_norm(form: &MultilinearForm) -> Result<NormEstimate> {
    if !form.is_diagonal() {
        return Err(Error::Structural("the closed form needs a diagonal form".into()));
    }
    let n = form.dims()[0];
    let m = form.m();
    let stride: usize = (0..m).map(|e| n.pow(e as u32)).sum();
    let diag: Vec<Scalar> = (0..n).map(|j| form.coeffs().data()[j * stride]).collect();
    let mags: Vec<f64> = diag.iter().map(|z| z.norm()).collect();
    let phase = |z: Scalar| {
        if z.is_zero() {
            Scalar::new(1.0, 0.0)
        } else {
            z.conj() / z.norm()
        }
    };

    let witness: Vec<Vec<Scalar>> = match holder_exponent(form.pspec()) {
        Some(rho) => {
            let norm = lq_of_magnitudes(&mags, rho);
            let rho_v = rho.value();
            (0..m)
                .map(|slot| {
                    let r = form.pspec().get(slot).recip_f64();
                    diag.iter()
                        .zip(&mags)
                        .map(|(&c, &a)| {
                            let t = if norm > 0.0 { a / norm } else { 0.0 };
                            let mag = if r == 0.0 { 1.0 } else { t.powf(rho_v * r) };
                            if slot == 0 {
                                phase(c) * mag
                            } else {
                                Scalar::new(mag, 0.0)
                            }
                        })
                        .collect()
                })
                .collect()
        }
        None => {
            let max = mags.iter().copied().fold(0.0f64, f64::max);
            let j = mags.iter().position(|&a| a == max).unwrap_or(0);
            (0..m)
                .map(|slot| {
                    let mut x = vec![Scalar::zero(); n];
                    x[j] = if slot == 0 { phase(diag[j]) } else { Scalar::new(1.0, 0.0) };
                    x
                })
                .collect()
        }
    };
    let value = form.evaluate(&witness)?.norm();
    Ok(NormEstimate {
        value,
        method: NormMethod::DiagonalClosedForm,
        certified: true,
        restarts_used: 0,
        iterations: 0,
        witness,
    })
}
