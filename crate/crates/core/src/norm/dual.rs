use num_traits::Zero;

use crate::exponent::Exponent;
use crate::mixed_norm::lq_of_magnitudes;
use crate::tensor::Scalar;

fn align(z: Scalar) -> Scalar {
    let r = z.norm();
    if r == 0.0 {
        Scalar::new(1.0, 0.0)
    } else {
        z.conj() / r
    }
}

/// Maximizes `|Σ c_i x_i|` over the unit ball of `ℓ_p`.
///
/// Returns the maximizer and the optimum `‖c‖_{p*}`. Phases are aligned so
/// each `c_i x_i` is nonnegative; for real `c` that is `sign(c_i)` with
/// `sign(0) = +1`. At `p = 1` the mass goes to the first largest `|c_j|`.
/// A zero `c` gives `(e_1, 0)`.
pub fn maximize_slot(c: &[Scalar], p: Exponent) -> (Vec<Scalar>, f64) {
    let n = c.len();
    let mags: Vec<f64> = c.iter().map(|z| z.norm()).collect();
    let max = mags.iter().copied().fold(0.0f64, f64::max);
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    if max == 0.0 {
        let mut e1 = vec![Scalar::zero(); n];
        e1[0] = Scalar::new(1.0, 0.0);
        return (e1, 0.0);
    }
    if p.is_infinite() {
        let x = c.iter().map(|&z| align(z)).collect();
        return (x, lq_of_magnitudes(&mags, Exponent::ONE));
    }
    if p.is_one() {
        let j = mags.iter().position(|&a| a == max).expect("max is attained");
        let mut x = vec![Scalar::zero(); n];
        x[j] = align(c[j]);
        return (x, max);
    }
    let dual = p.conjugate();
    let r = dual.value();
    // x_i = phase_i |c_i|^{r-1} / ‖c‖_r^{r-1}, computed on c / max
    let scaled_norm = lq_of_magnitudes(&mags, dual) / max;
    let denom = scaled_norm.powf(r - 1.0);
    let x = c
        .iter()
        .zip(&mags)
        .map(|(&z, &a)| {
            if a == 0.0 {
                Scalar::zero()
            } else {
                align(z) * ((a / max).powf(r - 1.0) / denom)
            }
        })
        .collect();
    (x, lq_of_magnitudes(&mags, dual))
}
