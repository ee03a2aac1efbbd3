//! Row-major dense arrays of scalars with the handful of contractions the
//! norm estimators need.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

/// Dense rank-`k` array, last axis contiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

impl DenseTensor {
    pub fn new(shape: Vec<usize>, data: Vec<Scalar>) -> Result<DenseTensor> {
        let expected = checked_volume(&shape)?;
        if expected != data.len() {
            return Err(Error::arg(format!(
                "shape {shape:?} needs {expected} entries, got {}",
                data.len()
            )));
        }
        Ok(DenseTensor { shape, data })
    }

    pub fn from_real(shape: Vec<usize>, data: &[f64]) -> Result<DenseTensor> {
        DenseTensor::new(shape, data.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    pub fn zeros(shape: Vec<usize>) -> Result<DenseTensor> {
        let n = checked_volume(&shape)?;
        Ok(DenseTensor {
            shape,
            data: vec![Scalar::zero(); n],
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major offset of a multi-index, `None` when out of range.
    pub fn offset(&self, index: &[usize]) -> Option<usize> {
        if index.len() != self.shape.len() {
            return None;
        }
        let mut off = 0usize;
        for (&i, &n) in index.iter().zip(&self.shape) {
            if i >= n {
                return None;
            }
            off = off * n + i;
        }
        Some(off)
    }

    pub fn get(&self, index: &[usize]) -> Option<Scalar> {
        self.offset(index).map(|o| self.data[o])
    }

    pub fn map(&self, f: impl Fn(Scalar) -> Scalar) -> DenseTensor {
        DenseTensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Contracts axis `axis` against `x`, dropping that axis.
    pub fn contract_axis(&self, axis: usize, x: &[Scalar]) -> DenseTensor {
        assert!(axis < self.rank(), "axis {axis} out of range");
        let n = self.shape[axis];
        assert_eq!(x.len(), n, "contraction vector length");
        let outer: usize = self.shape[..axis].iter().product();
        let inner: usize = self.shape[axis + 1..].iter().product();
        let mut out = vec![Scalar::zero(); outer * inner];
        for a in 0..outer {
            let dst = &mut out[a * inner..(a + 1) * inner];
            for (t, &xt) in x.iter().enumerate() {
                if xt.is_zero() {
                    continue;
                }
                let src = &self.data[(a * n + t) * inner..(a * n + t + 1) * inner];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += s * xt;
                }
            }
        }
        let mut shape = self.shape.clone();
        shape.remove(axis);
        DenseTensor { shape, data: out }
    }

    /// Contracts every axis except `keep` against the matching vector in `xs`.
    ///
    /// The result is the vector `c` with `c_i = T(x_1, ..., e_i, ..., x_m)`.
    pub fn contract_all_but(&self, keep: usize, xs: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(xs.len(), self.rank());
        let mut t = self.clone();
        // Contract from the last axis down so earlier axis indices stay valid.
        for axis in (0..self.rank()).rev() {
            if axis == keep {
                continue;
            }
            t = t.contract_axis(axis, &xs[axis]);
        }
        t.data
    }
}

pub(crate) fn checked_volume(shape: &[usize]) -> Result<usize> {
    shape.iter().try_fold(1usize, |acc, &n| {
        acc.checked_mul(n)
            .ok_or_else(|| Error::Resource(format!("shape {shape:?} overflows usize")))
    })
}

/// Iterates all multi-indices of `shape` in row-major order.
pub fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    let mut current = vec![0usize; shape.len()];
    let mut first = true;
    (0..total).map(move |_| {
        if first {
            first = false;
        } else {
            for axis in (0..shape.len()).rev() {
                current[axis] += 1;
                if current[axis] < shape[axis] {
                    break;
                }
                current[axis] = 0;
            }
        }
        current.clone()
    })
}

/// Pairwise summation; result is independent of how callers split the slice.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
