use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exponent::PSpec;
use crate::form::{MultilinearForm, ScalarField};
use crate::norm::{estimate_norm, NormConfig, NormEstimate};
use crate::tensor::DenseTensor;

/// Mixes `(seed, a, b)` into one 64-bit seed (splitmix64 finalizer).
pub(crate) fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A uniform random `±1` coefficient tensor of shape `n^m`.
pub fn random_sign_form<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    pspec: PSpec,
    rng: &mut R,
) -> Result<MultilinearForm> {
    let size = n
        .checked_pow(m as u32)
        .ok_or_else(|| Error::Resource(format!("{n}^{m} coefficients overflow")))?;
    let signs: Vec<f64> = (0..size)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    MultilinearForm::new(ScalarField::Real, pspec, DenseTensor::from_real(vec![n; m], &signs)?)
}

/// Best of `draws` random sign forms: the one with the smallest norm
/// estimate (lowest draw index on ties).
///
/// Draw `d` uses the stream `(seed, n, d)`, so results do not depend on
/// scheduling.
pub fn ksz_form(
    field: ScalarField,
    m: usize,
    n: usize,
    pspec: &PSpec,
    seed: u64,
    draws: usize,
    cfg: &NormConfig,
) -> Result<(MultilinearForm, NormEstimate)> {
    if field == ScalarField::Complex {
        return Err(Error::Unsupported(
            "random sign forms are real; unimodular complex draws are not provided".into(),
        ));
    }
    if draws == 0 {
        return Err(Error::arg("draws must be at least 1"));
    }
    if pspec.len() != m {
        return Err(Error::arg(format!("p-spec has {} entries, m = {m}", pspec.len())));
    }
    let results: Vec<Result<(MultilinearForm, NormEstimate)>> = (0..draws)
        .into_par_iter()
        .map(|d| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, n as u64, d as u64));
            let form = random_sign_form(m, n, pspec.clone(), &mut rng)?;
            let local = cfg.clone().with_seed(derive_seed(cfg.seed, n as u64, d as u64));
            let est = estimate_norm(&form, &local)?;
            Ok((form, est))
        })
        .collect();
    let mut best: Option<(MultilinearForm, NormEstimate)> = None;
    for r in results {
        let (form, est) = r?;
        if best.as_ref().map_or(true, |(_, b)| est.value < b.value) {
            best = Some((form, est));
        }
    }
    Ok(best.expect("at least one draw"))
}
