use crate::error::Result;
use crate::exponent::Exponent;
use crate::form::MultilinearForm;
use crate::tensor::Scalar;

use super::dual::maximize_slot;
use super::{NormEstimate, NormMethod};

fn sign(b: bool) -> f64 {
    if b {
        -1.0
    } else {
        1.0
    }
}

/// Contracts the leading axis of a real row-major array with `x`.
fn contract_leading(data: &[f64], x: &[f64]) -> Vec<f64> {
    let rest = data.len() / x.len();
    let mut out = vec![0.0; rest];
    for (row, &s) in data.chunks_exact(rest).zip(x) {
        for (o, &c) in out.iter_mut().zip(row) {
            *o += s * c;
        }
    }
    out
}

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|a| a.abs()).sum()
}

/// Exact norm of a real form on `ℓ_∞^{n_1} × ... × ℓ_∞^{n_m}`.
///
/// The supremum is attained at sign vectors, and for fixed signs in the first
/// `m-1` slots the last slot contributes an `ℓ_1` norm. Slots `0..m-2` are
/// enumerated directly and slot `m-2` by Gray code with incremental updates.
/// Coordinate 0 of slot 0 is fixed to `+1` since `T(-x, ...) = -T(x, ...)`.
pub fn exact_sign_norm(form: &MultilinearForm) -> Result<NormEstimate> {
    let dims = form.dims().to_vec();
    let m = dims.len();
    if m == 1 {
        let (x, _) = maximize_slot(form.coeffs().data(), Exponent::INFINITY);
        let value = form.evaluate(std::slice::from_ref(&x))?.norm();
        return Ok(NormEstimate {
            value,
            method: NormMethod::ExactSignEnum,
            certified: true,
            restarts_used: 0,
            iterations: 1,
            witness: vec![x],
        });
    }
    let coeffs: Vec<f64> = form.coeffs().data().iter().map(|z| z.re).collect();
    let outer = m - 2;
    let gray_dim = dims[m - 2];
    let last_dim = dims[m - 1];
    // bits free to vary in the outer slots (slot 0 loses one bit when outer)
    let outer_bits: Vec<usize> = (0..outer)
        .map(|j| if j == 0 { dims[0] - 1 } else { dims[j] })
        .collect();
    let outer_total: u32 = outer_bits.iter().map(|&b| b as u32).sum();
    let gray_fixed = usize::from(outer == 0);
    let gray_bits = gray_dim - gray_fixed;

    let mut best_value = -1.0f64;
    let mut best_signs: Vec<Vec<f64>> = Vec::new();
    let mut patterns: usize = 0;

    for code in 0u64..(1u64 << outer_total) {
        let mut outer_signs: Vec<Vec<f64>> = Vec::with_capacity(outer);
        let mut shift = 0;
        for j in 0..outer {
            let fixed = usize::from(j == 0);
            let v: Vec<f64> = (0..dims[j])
                .map(|i| {
                    if i < fixed {
                        1.0
                    } else {
                        sign((code >> (shift + i - fixed)) & 1 == 1)
                    }
                })
                .collect();
            shift += outer_bits[j];
            outer_signs.push(v);
        }
        let mut mat = coeffs.clone();
        for s in &outer_signs {
            mat = contract_leading(&mat, s);
        }
        // mat is gray_dim x last_dim; start with every sign +1
        let mut x = vec![1.0; gray_dim];
        let mut v = contract_leading(&mat, &x);
        let mut consider = |x: &[f64], v: &[f64]| {
            let val = l1(v);
            if val > best_value {
                best_value = val;
                let mut signs = outer_signs.clone();
                signs.push(x.to_vec());
                signs.push(v.iter().map(|&a| sign(a < 0.0)).collect());
                best_signs = signs;
            }
        };
        consider(&x, &v);
        patterns += 1;
        for g in 1u64..(1u64 << gray_bits) {
            let a = g.trailing_zeros() as usize + gray_fixed;
            let row = &mat[a * last_dim..(a + 1) * last_dim];
            let delta = -2.0 * x[a];
            for (vi, &r) in v.iter_mut().zip(row) {
                *vi += delta * r;
            }
            x[a] = -x[a];
            consider(&x, &v);
            patterns += 1;
        }
    }

    let witness: Vec<Vec<Scalar>> = best_signs
        .into_iter()
        .map(|s| s.into_iter().map(|a| Scalar::new(a, 0.0)).collect())
        .collect();
    let value = form.evaluate(&witness)?.norm();
    Ok(NormEstimate {
        value,
        method: NormMethod::ExactSignEnum,
        certified: true,
        restarts_used: 0,
        iterations: patterns,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::PSpec;
    use crate::tensor::multi_indices;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Visits every sign vertex of the full product.
    fn brute_force(form: &MultilinearForm) -> f64 {
        let dims = form.dims().to_vec();
        let total: usize = dims.iter().sum();
        let mut best = 0.0f64;
        for code in 0u64..(1 << total) {
            let mut off = 0;
            let xs: Vec<Vec<Scalar>> = dims
                .iter()
                .map(|&n| {
                    let v = (0..n)
                        .map(|i| Scalar::new(sign((code >> (off + i)) & 1 == 1), 0.0))
                        .collect();
                    off += n;
                    v
                })
                .collect();
            best = best.max(form.evaluate(&xs).unwrap().norm());
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dims in [vec![3], vec![2, 3], vec![3, 2, 2], vec![2, 2, 2, 2], vec![1, 3, 2]] {
            let size: usize = dims.iter().product();
            let c: Vec<f64> = (0..size).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let t = MultilinearForm::real(dims.clone(), PSpec::infinite(dims.len()), &c).unwrap();
            let est = exact_sign_norm(&t).unwrap();
            let oracle = brute_force(&t);
            assert!((est.value - oracle).abs() < 1e-12 * oracle.max(1.0), "{dims:?}");
        }
    }

    #[test]
    fn all_ones_three_linear() {
        let t = MultilinearForm::real(vec![2, 2, 2], PSpec::infinite(3), &[1.0; 8]).unwrap();
        assert_eq!(exact_sign_norm(&t).unwrap().value, 8.0);
        assert_eq!(multi_indices(&[2, 2, 2]).count(), 8);
    }
}
