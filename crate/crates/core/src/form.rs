//! Multilinear forms on products of finite-dimensional `ℓ_p` spaces, stored as
//! dense coefficient tensors, plus the partition blocks used by partial sums.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::PSpec;
use crate::tensor::{checked_volume, DenseTensor, Scalar};

/// Default cap on the number of stored coefficients.
pub const DEFAULT_ENTRY_BUDGET: usize = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarField {
    Real,
    Complex,
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarField::Real => "real",
            ScalarField::Complex => "complex",
        })
    }
}

impl FromStr for ScalarField {
    type Err = Error;
    fn from_str(s: &str) -> Result<ScalarField> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(ScalarField::Real),
            "complex" | "c" => Ok(ScalarField::Complex),
            other => Err(Error::Parse(format!("unknown scalar field {other:?}"))),
        }
    }
}

/// Assignment of the `m` slots of a form to `k` non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    labels: Vec<usize>,
    k: usize,
}

impl PartitionSpec {
    /// Arbitrary assignment; `labels[s]` is the zero-based block of slot `s`.
    pub fn from_labels(labels: Vec<usize>) -> Result<PartitionSpec> {
        if labels.is_empty() {
            return Err(Error::arg("partition needs at least one slot"));
        }
        let k = labels.iter().max().map_or(0, |&l| l + 1);
        for block in 0..k {
            if !labels.contains(&block) {
                return Err(Error::arg(format!(
                    "block {} of the partition is empty",
                    block + 1
                )));
            }
        }
        Ok(PartitionSpec { labels, k })
    }

    /// Contiguous blocks `I_1 = {1..n_1}`, `I_2 = {n_1+1..n_1+n_2}`, ...
    pub fn contiguous(multiplicities: &[usize]) -> Result<PartitionSpec> {
        if multiplicities.is_empty() || multiplicities.contains(&0) {
            return Err(Error::arg(format!(
                "block multiplicities must be positive, got {multiplicities:?}"
            )));
        }
        let labels = multiplicities
            .iter()
            .enumerate()
            .flat_map(|(b, &n)| std::iter::repeat(b).take(n))
            .collect();
        PartitionSpec::from_labels(labels)
    }

    /// Every slot its own block (`k = m`).
    pub fn identity(m: usize) -> PartitionSpec {
        PartitionSpec {
            labels: (0..m).collect(),
            k: m,
        }
    }

    /// One block holding every slot (`k = 1`).
    pub fn diagonal(m: usize) -> PartitionSpec {
        PartitionSpec {
            labels: vec![0; m],
            k: 1,
        }
    }

    /// Near-even contiguous split of `m` slots into `k` blocks.
    pub fn balanced(m: usize, k: usize) -> Result<PartitionSpec> {
        if k == 0 || k > m {
            return Err(Error::arg(format!("need 1 <= k <= m, got k={k}, m={m}")));
        }
        let ns: Vec<usize> = (0..k).map(|b| m / k + usize::from(b < m % k)).collect();
        PartitionSpec::contiguous(&ns)
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, slot: usize) -> usize {
        self.labels[slot]
    }

    /// Slots of each block, in increasing order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.k];
        for (slot, &b) in self.labels.iter().enumerate() {
            blocks[b].push(slot);
        }
        blocks
    }

    /// Block sizes `n_1, ..., n_k`.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks().iter().map(Vec::len).collect()
    }

    pub fn is_contiguous(&self) -> bool {
        self.labels.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// `;`-separated one-based labels, e.g. `1;1;2`.
    pub fn compact(&self) -> String {
        self.labels
            .iter()
            .map(|l| (l + 1).to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

/// An `m`-linear form `T : ℓ_{p_1}^{N_1} × ... × ℓ_{p_m}^{N_m} → 𝕂`.
///
/// `coeffs[j_1, ..., j_m] = T(e_{j_1}, ..., e_{j_m})`. Immutable once built.
#[derive(Clone, Debug)]
pub struct MultilinearForm {
    field: ScalarField,
    pspec: PSpec,
    coeffs: DenseTensor,
}

impl MultilinearForm {
    pub fn new(field: ScalarField, pspec: PSpec, coeffs: DenseTensor) -> Result<MultilinearForm> {
        MultilinearForm::with_budget(field, pspec, coeffs, DEFAULT_ENTRY_BUDGET)
    }

    pub fn with_budget(
        field: ScalarField,
        pspec: PSpec,
        coeffs: DenseTensor,
        budget: usize,
    ) -> Result<MultilinearForm> {
        if coeffs.rank() == 0 {
            return Err(Error::arg("a form needs at least one slot"));
        }
        if pspec.len() != coeffs.rank() {
            return Err(Error::arg(format!(
                "p-spec has {} entries but the form has {} slots",
                pspec.len(),
                coeffs.rank()
            )));
        }
        if coeffs.shape().contains(&0) {
            return Err(Error::arg("slot extents must be positive"));
        }
        if coeffs.len() > budget {
            return Err(Error::Resource(format!(
                "{} coefficients exceed the entry budget {budget}",
                coeffs.len()
            )));
        }
        if field == ScalarField::Real && coeffs.data().iter().any(|z| z.im != 0.0) {
            return Err(Error::arg("real form with a non-real coefficient"));
        }
        Ok(MultilinearForm {
            field,
            pspec,
            coeffs,
        })
    }

    /// Real form from row-major coefficients.
    pub fn real(dims: Vec<usize>, pspec: PSpec, coeffs: &[f64]) -> Result<MultilinearForm> {
        MultilinearForm::new(ScalarField::Real, pspec, DenseTensor::from_real(dims, coeffs)?)
    }

    /// Form supported on the main diagonal, `T(e_j, ..., e_j) = diag[j]`.
    pub fn diagonal(field: ScalarField, pspec: PSpec, diag: &[Scalar]) -> Result<MultilinearForm> {
        let m = pspec.len();
        let n = diag.len();
        let mut coeffs = DenseTensor::zeros(vec![n; m])?.into_data();
        // offset of (j, ..., j) is j * (1 + n + n^2 + ...)
        let stride: usize = (0..m).map(|e| n.pow(e as u32)).sum();
        for (j, &c) in diag.iter().enumerate() {
            coeffs[j * stride] = c;
        }
        MultilinearForm::new(field, pspec, DenseTensor::new(vec![n; m], coeffs)?)
    }

    /// I.i.d. standard normal coefficients; complex entries draw real and
    /// imaginary parts independently.
    pub fn gaussian<R: Rng + ?Sized>(
        field: ScalarField,
        dims: Vec<usize>,
        pspec: PSpec,
        rng: &mut R,
    ) -> Result<MultilinearForm> {
        let n = checked_volume(&dims)?;
        if n > DEFAULT_ENTRY_BUDGET {
            return Err(Error::Resource(format!(
                "{n} coefficients exceed the entry budget {DEFAULT_ENTRY_BUDGET}"
            )));
        }
        let data = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = match field {
                    ScalarField::Real => 0.0,
                    ScalarField::Complex => rng.sample(StandardNormal),
                };
                Scalar::new(re, im)
            })
            .collect();
        MultilinearForm::new(field, pspec, DenseTensor::new(dims, data)?)
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn m(&self) -> usize {
        self.coeffs.rank()
    }

    pub fn dims(&self) -> &[usize] {
        self.coeffs.shape()
    }

    pub fn pspec(&self) -> &PSpec {
        &self.pspec
    }

    pub fn coeffs(&self) -> &DenseTensor {
        &self.coeffs
    }

    /// `c·T`, same field when `c` is real.
    pub fn scaled(&self, c: Scalar) -> Result<MultilinearForm> {
        let field = if c.im == 0.0 { self.field } else { ScalarField::Complex };
        MultilinearForm::new(field, self.pspec.clone(), self.coeffs.map(|z| z * c))
    }

    /// `T(x_1, ..., x_m)` by full multilinear expansion.
    pub fn evaluate(&self, args: &[Vec<Scalar>]) -> Result<Scalar> {
        if args.len() != self.m() {
            return Err(Error::arg(format!(
                "expected {} arguments, got {}",
                self.m(),
                args.len()
            )));
        }
        for (j, (x, &n)) in args.iter().zip(self.dims()).enumerate() {
            if x.len() != n {
                return Err(Error::arg(format!(
                    "argument {} has length {}, slot extent is {n}",
                    j + 1,
                    x.len()
                )));
            }
        }
        let mut t = self.coeffs.contract_axis(self.m() - 1, &args[self.m() - 1]);
        for axis in (0..self.m() - 1).rev() {
            t = t.contract_axis(axis, &args[axis]);
        }
        Ok(t.data()[0])
    }

    /// Per-block extents; errors when a block mixes slot extents.
    pub fn block_extents(&self, part: &PartitionSpec) -> Result<Vec<usize>> {
        if part.m() != self.m() {
            return Err(Error::Structural(format!(
                "partition covers {} slots, form has {}",
                part.m(),
                self.m()
            )));
        }
        part.blocks()
            .iter()
            .enumerate()
            .map(|(b, slots)| {
                let n = self.dims()[slots[0]];
                if slots.iter().any(|&s| self.dims()[s] != n) {
                    Err(Error::Structural(format!(
                        "block {} mixes slot extents {:?}",
                        b + 1,
                        slots.iter().map(|&s| self.dims()[s]).collect::<Vec<_>>()
                    )))
                } else {
                    Ok(n)
                }
            })
            .collect()
    }

    /// `T(e_{i_1}^{n_1}, ..., e_{i_k}^{n_k})`: index `i_b` repeated in every slot of block `b`.
    pub fn block_coefficient(&self, part: &PartitionSpec, idx: &[usize]) -> Result<Scalar> {
        let extents = self.block_extents(part)?;
        if idx.len() != part.k() {
            return Err(Error::arg(format!(
                "expected {} block indices, got {}",
                part.k(),
                idx.len()
            )));
        }
        if let Some((b, (&i, &n))) = idx
            .iter()
            .zip(&extents)
            .enumerate()
            .find(|(_, (&i, &n))| i >= n)
        {
            return Err(Error::arg(format!(
                "block index {i} out of range for block {} of extent {n}",
                b + 1
            )));
        }
        let full: Vec<usize> = part.labels().iter().map(|&b| idx[b]).collect();
        Ok(self.coeffs.get(&full).expect("index validated"))
    }

    /// The rank-`k` array of all block coefficients.
    pub fn block_value_tensor(&self, part: &PartitionSpec) -> Result<DenseTensor> {
        let extents = self.block_extents(part)?;
        // Row-major stride of each slot in the full tensor, folded per block.
        let dims = self.dims();
        let mut slot_stride = vec![1usize; dims.len()];
        for s in (0..dims.len().saturating_sub(1)).rev() {
            slot_stride[s] = slot_stride[s + 1] * dims[s + 1];
        }
        let mut block_stride = vec![0usize; part.k()];
        for (s, &b) in part.labels().iter().enumerate() {
            block_stride[b] += slot_stride[s];
        }
        let total = checked_volume(&extents)?;
        let data = self.coeffs.data();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; part.k()];
        for _ in 0..total {
            let off: usize = idx.iter().zip(&block_stride).map(|(i, s)| i * s).sum();
            out.push(data[off]);
            for b in (0..idx.len()).rev() {
                idx[b] += 1;
                if idx[b] < extents[b] {
                    break;
                }
                idx[b] = 0;
            }
        }
        DenseTensor::new(extents, out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.data().iter().all(|z| z.is_zero())
    }

    /// True when every nonzero coefficient sits on the main diagonal.
    pub fn is_diagonal(&self) -> bool {
        let n = self.dims()[0];
        if self.dims().iter().any(|&d| d != n) {
            return false;
        }
        let stride: usize = (0..self.m()).map(|e| n.pow(e as u32)).sum();
        self.coeffs
            .data()
            .iter()
            .enumerate()
            .all(|(off, z)| z.is_zero() || off % stride == 0)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&FormFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<MultilinearForm> {
        let file: FormFile = serde_json::from_str(text)?;
        file.into_form()
    }

    pub fn load(path: &Path) -> Result<MultilinearForm> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        MultilinearForm::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coef {
    Real(f64),
    Complex([f64; 2]),
}

/// On-disk fixture layout: `coeffs` is the row-major flat list.
#[derive(Serialize, Deserialize)]
struct FormFile {
    field: ScalarField,
    m: usize,
    dims: Vec<usize>,
    pspec: PSpec,
    coeffs: Vec<Coef>,
}

impl From<&MultilinearForm> for FormFile {
    fn from(form: &MultilinearForm) -> FormFile {
        let coeffs = form
            .coeffs
            .data()
            .iter()
            .map(|z| match form.field {
                ScalarField::Real => Coef::Real(z.re),
                ScalarField::Complex => Coef::Complex([z.re, z.im]),
            })
            .collect();
        FormFile {
            field: form.field,
            m: form.m(),
            dims: form.dims().to_vec(),
            pspec: form.pspec.clone(),
            coeffs,
        }
    }
}

impl FormFile {
    fn into_form(self) -> Result<MultilinearForm> {
        if self.m != self.dims.len() {
            return Err(Error::arg(format!(
                "m = {} but dims has {} entries",
                self.m,
                self.dims.len()
            )));
        }
        let data = self
            .coeffs
            .into_iter()
            .map(|c| match c {
                Coef::Real(x) => Scalar::new(x, 0.0),
                Coef::Complex([re, im]) => Scalar::new(re, im),
            })
            .collect();
        MultilinearForm::new(self.field, self.pspec, DenseTensor::new(self.dims, data)?)
    }
}
