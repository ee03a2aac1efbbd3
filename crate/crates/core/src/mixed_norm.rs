//! Nested mixed norms `‖·‖_{ℓ_{q_1}(ℓ_{q_2}(⋯ ℓ_{q_k}))}` of rank-`k` arrays.
//!
//! The innermost (last) axis is reduced first with `ℓ_{q_k}`, then axis
//! `k-1` with `ℓ_{q_{k-1}}`, and so on. Each `ℓ_q` reduction divides by the
//! largest magnitude before powering, so neither huge entries nor large
//! exponents overflow, and sums are pairwise so the result does not depend on
//! how a caller might split the work.

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector};
use crate::tensor::{pairwise_sum, DenseTensor};

/// `ℓ_q` norm of a vector of magnitudes (all entries must be `>= 0`).
pub fn lq_of_magnitudes(mags: &[f64], q: Exponent) -> f64 {
    let max = mags.iter().copied().fold(0.0f64, f64::max);
    if q.is_infinite() || max == 0.0 {
        return max;
    }
    let qv = q.value();
    if q.recip().compare(crate::exponent::Frac::ONE).is_eq() {
        return pairwise_sum(mags);
    }
    let scaled: Vec<f64> = mags
        .iter()
        .filter(|&&a| a > 0.0)
        .map(|&a| (a / max).powf(qv))
        .collect();
    max * pairwise_sum(&scaled).powf(1.0 / qv)
}

/// Nested mixed norm with exponent `q_j` applied to axis `j`.
pub fn mixed_norm(values: &DenseTensor, q: &ExponentVector) -> Result<f64> {
    if values.rank() != q.len() {
        return Err(Error::arg(format!(
            "array has rank {} but the exponent vector has {} entries",
            values.rank(),
            q.len()
        )));
    }
    let mut level: Vec<f64> = values.data().iter().map(|z| z.norm()).collect();
    for axis in (0..values.rank()).rev() {
        let extent = values.shape()[axis];
        level = level
            .chunks_exact(extent)
            .map(|lane| lq_of_magnitudes(lane, q.get(axis)))
            .collect();
    }
    debug_assert_eq!(level.len(), 1);
    Ok(level[0])
}

/// Flat `ℓ_q` norm over every entry; equals [`mixed_norm`] with `q` repeated.
pub fn flat_lq(values: &DenseTensor, q: Exponent) -> f64 {
    let mags: Vec<f64> = values.data().iter().map(|z| z.norm()).collect();
    lq_of_magnitudes(&mags, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Scalar;

    fn arr(shape: Vec<usize>, v: &[f64]) -> DenseTensor {
        DenseTensor::from_real(shape, v).unwrap()
    }

    fn q(s: &str) -> ExponentVector {
        ExponentVector::parse(s).unwrap()
    }

    #[test]
    fn one_point() {
        let mut v = vec![0.0; 12];
        v[7] = -3.5;
        let a = arr(vec![3, 4], &v);
        for qs in ["1,1", "4/3,2", "inf,1", "2,inf", "inf,inf"] {
            assert_eq!(mixed_norm(&a, &q(qs)).unwrap(), 3.5);
        }
    }

    #[test]
    fn ones_four_thirds() {
        let a = arr(vec![2, 2], &[1.0; 4]);
        let expect = 4f64.powf(0.75);
        assert!((mixed_norm(&a, &q("4/3,4/3")).unwrap() - expect).abs() < 1e-15);
        let signs = arr(vec![2, 2], &[1.0, 1.0, 1.0, -1.0]);
        let flat = flat_lq(&signs, "4/3".parse().unwrap());
        assert!((flat - expect).abs() < 1e-15);
    }

    #[test]
    fn sup_of_row_sums() {
        let a = arr(vec![2, 2], &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(mixed_norm(&a, &q("inf,1")).unwrap(), 7.0);
        // scalar-loop oracle
        let rows = [[1.0f64, 2.0], [3.0, 4.0]];
        let oracle = rows
            .iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        assert_eq!(oracle, 7.0);
        // the other nesting: l1 over rows of the column maxima
        assert_eq!(mixed_norm(&a, &q("1,inf")).unwrap(), 6.0);
    }

    #[test]
    fn flat_cases() {
        assert_eq!(flat_lq(&arr(vec![1, 2], &[3.0, 4.0]), Exponent::integer(2).unwrap()), 5.0);
        let a = arr(vec![2, 2], &[0.5, -9.0, 2.0, 1.0]);
        assert_eq!(flat_lq(&a, Exponent::INFINITY), 9.0);
    }

    #[test]
    fn zero_array_is_zero() {
        let a = arr(vec![2, 3], &[0.0; 6]);
        assert_eq!(mixed_norm(&a, &q("1,4/3")).unwrap(), 0.0);
    }

    #[test]
    fn extreme_magnitudes_do_not_overflow() {
        let a = arr(vec![2], &[1e200, 1e200]);
        let v = mixed_norm(&a, &q("2")).unwrap();
        assert!((v / (1e200 * 2f64.sqrt()) - 1.0).abs() < 1e-14);
        let tiny = arr(vec![2], &[1e-200, 1e-200]);
        let v = mixed_norm(&tiny, &q("100")).unwrap();
        assert!((v / (1e-200 * 2f64.powf(0.01)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_magnitudes() {
        let a = DenseTensor::new(vec![1], vec![Scalar::new(3.0, 4.0)]).unwrap();
        assert_eq!(mixed_norm(&a, &q("1")).unwrap(), 5.0);
    }

    #[test]
    fn errors() {
        let a = arr(vec![2, 2], &[1.0; 4]);
        assert!(matches!(mixed_norm(&a, &q("2")), Err(Error::Argument(_))));
        assert!(ExponentVector::parse("0.5,2").is_err());
    }
}
