use crate::error::{Error, Result};
use crate::exponent::{Frac, PSpec};
use crate::form::{MultilinearForm, ScalarField};
use crate::tensor::{pairwise_sum, Scalar};

/// Diagonal form with `T(e_j, ..., e_j) = j^β` (1-based `j`).
pub fn zalduendo_form(m: usize, n: usize, pspec: &PSpec, beta: f64) -> Result<MultilinearForm> {
    if pspec.len() != m {
        return Err(Error::arg(format!("p-spec has {} entries, m = {m}", pspec.len())));
    }
    let diag: Vec<Scalar> = zalduendo_coefficients(n, beta)
        .into_iter()
        .map(|c| Scalar::new(c, 0.0))
        .collect();
    MultilinearForm::diagonal(ScalarField::Real, pspec.clone(), &diag)
}

pub fn zalduendo_coefficients(n: usize, beta: f64) -> Vec<f64> {
    (1..=n).map(|j| (j as f64).powf(beta)).collect()
}

/// `Σ_{j=1}^n j^{βs}`, summed without building any tensor.
pub fn zalduendo_power_sum(n: usize, beta: f64, s: f64) -> f64 {
    let terms: Vec<f64> = (1..=n).map(|j| (j as f64).powf(beta * s)).collect();
    pairwise_sum(&terms)
}

/// `(Σ_{j<=n} j^{βs})^{1/s}`: the flat `ℓ_s` left-hand side for every
/// partition, since the block array stays diagonal.
pub fn zalduendo_lhs(n: usize, beta: f64, s: f64) -> f64 {
    if s.is_infinite() {
        // j^β is largest at j = 1 for β <= 0
        return (1..=n).map(|j| (j as f64).powf(beta)).fold(0.0, f64::max);
    }
    zalduendo_power_sum(n, beta, s).powf(1.0 / s)
}

/// Midpoint of the feasible interval `(-1/s, -1/ρ)`, `ρ = (1 - |1/p|)^{-1}`.
///
/// Needs `|1/p| < 1` and `s < ρ`.
pub fn zalduendo_beta(s: f64, pspec: &PSpec) -> Result<f64> {
    let inv = pspec.inv_sum();
    if !inv.lt(Frac::ONE) {
        return Err(Error::hypothesis(format!("|1/p| = {inv} violates |1/p| < 1")));
    }
    let rho_recip = (Frac::ONE - inv).to_f64();
    if !(s >= 1.0 && s * rho_recip < 1.0) {
        return Err(Error::hypothesis(format!(
            "s = {s} must satisfy 1 <= s < rho = {}",
            1.0 / rho_recip
        )));
    }
    Ok(-(1.0 / s + rho_recip) / 2.0)
}
