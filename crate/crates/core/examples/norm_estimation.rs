//! Exact sign enumeration versus multi-start alternating ascent on random
//! 3×3 real bilinear forms, plus an ascent run on ℓ_4 × ℓ_4.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multisum::exponent::PSpec;
use multisum::form::{MultilinearForm, ScalarField};
use multisum::norm::{estimate_norm, ExactMode, NormConfig};

fn main() -> multisum::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut agree = 0;
    let trials = 20;
    for i in 0..trials {
        let t = MultilinearForm::gaussian(ScalarField::Real, vec![3, 3], PSpec::infinite(2), &mut rng)?;
        let exact = estimate_norm(&t, &NormConfig::default().with_exact(ExactMode::Forced))?;
        let ascent = estimate_norm(&t, &NormConfig::default().with_exact(ExactMode::Off).with_seed(i))?;
        let rel = (exact.value - ascent.value) / exact.value;
        if rel <= 1e-6 {
            agree += 1;
        }
        println!("{i:>3} exact {:>9.6} ascent {:>9.6} gap {rel:.2e}", exact.value, ascent.value);
    }
    println!("ascent matched {agree}/{trials}");

    let t = MultilinearForm::gaussian(ScalarField::Complex, vec![4, 4], PSpec::parse("4,4")?, &mut rng)?;
    let est = estimate_norm(&t, &NormConfig::default())?;
    println!(
        "complex 4x4 on l4 x l4: {:.6} (lower bound, {} sweeps over {} restarts)",
        est.value, est.iterations, est.restarts_used
    );
    Ok(())
}
