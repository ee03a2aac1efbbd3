use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{Frac, PSpec, Rational};
use crate::form::{PartitionSpec, ScalarField};
use crate::special::{harmonic, ln_gamma};

use super::exponents::{classify, require_below_one, Regime};

/// Which closed formula produced a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaId {
    /// `B_1 = 1`.
    BhOne,
    /// `Π_{j=2}^k Γ(2 - 1/j)^{j/(2-2j)}`.
    BhComplexGamma,
    /// `(√2)^{H_{k-1}}`, real, `k <= 13`.
    BhRealHarmonic,
    /// `2^{446381/55440 - k/2} Π_{j=14}^k (Γ(3/2 - 1/j)/√π)^{j/(2-2j)}`, real, `k >= 14`.
    BhRealGamma,
    /// `k = 1` with `|1/p| < 1`: the diagonal sum is bounded by `‖T‖` itself.
    DiagonalAveraging,
    /// `(√2)^{m-1}` or `(2/√π)^{m-1}` for `1/2 <= |1/p| < 1`.
    CriticalBand,
    /// `(√2 or 2/√π)^{2(k-1)|1/p|} · B_k^{1 - 2|1/p|}` for `|1/p| <= 1/2`.
    SubcriticalInterpolated,
    /// `(√2)^{k-1}` or `(2/√π)^{k-1}`, valid for every admissible mixed `q`.
    MixedOneTwo,
    /// The `k`-linear bound at exponents `p_j/n_j`, for block-constant `p`.
    BlockQuotient,
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormulaId::BhOne => "bh-one",
            FormulaId::BhComplexGamma => "bh-complex-gamma",
            FormulaId::BhRealHarmonic => "bh-real-harmonic",
            FormulaId::BhRealGamma => "bh-real-gamma",
            FormulaId::DiagonalAveraging => "diagonal-averaging",
            FormulaId::CriticalBand => "critical-band",
            FormulaId::SubcriticalInterpolated => "subcritical-interpolated",
            FormulaId::MixedOneTwo => "mixed-one-two",
            FormulaId::BlockQuotient => "block-quotient",
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConstantBound {
    pub value: f64,
    pub formula_id: FormulaId,
    pub field: ScalarField,
}

/// Every applicable bound plus the smallest one.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantReport {
    pub best: ConstantBound,
    pub candidates: Vec<ConstantBound>,
}

impl ConstantReport {
    fn from_candidates(candidates: Vec<ConstantBound>) -> ConstantReport {
        let mut best = candidates[0];
        for c in &candidates[1..] {
            if c.value < best.value {
                best = *c;
            }
        }
        ConstantReport { best, candidates }
    }
}

/// Base of the geometric constants: `√2` (real) or `2/√π` (complex).
pub fn khinchin_base(field: ScalarField) -> f64 {
    match field {
        ScalarField::Real => SQRT_2,
        ScalarField::Complex => 2.0 / PI.sqrt(),
    }
}

/// Envelope `k^{0.21139}` (complex) or `1.3 k^{0.36482}` (real).
pub fn bh_envelope(k: usize, field: ScalarField) -> f64 {
    let k = k as f64;
    match field {
        ScalarField::Complex => k.powf(0.21139),
        ScalarField::Real => 1.3 * k.powf(0.36482),
    }
}

/// Best known upper bound for the Bohnenblust–Hille constant `B_k`.
pub fn bh_constant_bound(k: usize, field: ScalarField) -> Result<ConstantBound> {
    if k < 1 {
        return Err(Error::arg("k must be at least 1"));
    }
    let bound = |value, formula_id| ConstantBound {
        value,
        formula_id,
        field,
    };
    if k == 1 {
        return Ok(bound(1.0, FormulaId::BhOne));
    }
    Ok(match field {
        ScalarField::Complex => {
            let ln: f64 = (2..=k)
                .map(|j| {
                    let j = j as f64;
                    j / (2.0 - 2.0 * j) * ln_gamma(2.0 - 1.0 / j)
                })
                .sum();
            bound(ln.exp(), FormulaId::BhComplexGamma)
        }
        ScalarField::Real if k <= 13 => bound(
            SQRT_2.powf(harmonic(k as u64 - 1)),
            FormulaId::BhRealHarmonic,
        ),
        ScalarField::Real => {
            let offset = Rational::new(446_381, 55_440);
            let lead = (Frac::Exact(offset) - Frac::ratio(k as i64, 2)).to_f64();
            let half_ln_pi = 0.5 * PI.ln();
            let ln: f64 = (14..=k)
                .map(|j| {
                    let j = j as f64;
                    j / (2.0 - 2.0 * j) * (ln_gamma(1.5 - 1.0 / j) - half_ln_pi)
                })
                .sum();
            bound((lead * std::f64::consts::LN_2 + ln).exp(), FormulaId::BhRealGamma)
        }
    })
}

/// `(√2)^{k-1}` or `(2/√π)^{k-1}`: bound for any admissible mixed `q` with
/// `|1/p| <= 1/2`.
pub fn mixed_constant_bound(k: usize, field: ScalarField) -> ConstantBound {
    ConstantBound {
        value: khinchin_base(field).powi(k as i32 - 1),
        formula_id: FormulaId::MixedOneTwo,
        field,
    }
}

/// Block-constant exponents folded to one per block, `p_j / n_j`, as
/// reciprocals `n_j / p_j`. `None` if `p` varies within a block or some
/// `p_j < n_j`.
fn block_quotient(part: &PartitionSpec, pspec: &PSpec) -> Option<PSpec> {
    let mut out = Vec::with_capacity(part.k());
    for block in part.blocks() {
        let p = pspec.get(block[0]);
        if block.iter().any(|&s| !pspec.get(s).approx_eq(p)) {
            return None;
        }
        let recip = Frac::int(block.len() as i64) * p.recip();
        out.push(crate::exponent::Exponent::from_recip(recip).ok()?);
    }
    PSpec::new(out).ok()
}

/// Constants for the flat-exponent inequality with `k` blocks at the exponent
/// [`super::hl_exponent`] returns.
pub fn unified_constant_bound(
    part: &PartitionSpec,
    pspec: &PSpec,
    field: ScalarField,
) -> Result<ConstantReport> {
    let (k, m) = (part.k(), part.m());
    if pspec.len() != m {
        return Err(Error::arg(format!("p-spec has {} entries, m = {m}", pspec.len())));
    }
    let class = classify(pspec);
    let s = class.inv_sum;
    require_below_one(s)?;
    let base = khinchin_base(field);
    let mut candidates = Vec::new();
    let push = |v: &mut Vec<ConstantBound>, value: f64, formula_id| {
        v.push(ConstantBound {
            value,
            formula_id,
            field,
        })
    };
    if k == 1 {
        push(&mut candidates, 1.0, FormulaId::DiagonalAveraging);
    }
    if class.regime == Regime::CriticalBand {
        push(&mut candidates, base.powi(m as i32 - 1), FormulaId::CriticalBand);
    }
    if s.le(Frac::ratio(1, 2)) {
        let two_s = 2.0 * s.to_f64();
        let bk = bh_constant_bound(k, field)?.value;
        let value = base.powf((k as f64 - 1.0) * two_s) * bk.powf(1.0 - two_s);
        push(&mut candidates, value, FormulaId::SubcriticalInterpolated);
        let mixed = mixed_constant_bound(k, field);
        candidates.push(mixed);
    }
    if k < m {
        if let Some(folded) = block_quotient(part, pspec) {
            let inner = unified_constant_bound(&PartitionSpec::identity(k), &folded, field)?;
            push(&mut candidates, inner.best.value, FormulaId::BlockQuotient);
        }
    }
    Ok(ConstantReport::from_candidates(candidates))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PSpec {
        PSpec::parse(s).unwrap()
    }

    #[test]
    fn bh_values() {
        for f in [ScalarField::Real, ScalarField::Complex] {
            assert_eq!(bh_constant_bound(1, f).unwrap().value, 1.0);
        }
        let c2 = bh_constant_bound(2, ScalarField::Complex).unwrap();
        assert!((c2.value - 1.128_379_167_095_512_6).abs() < 1e-13);
        let r13 = bh_constant_bound(13, ScalarField::Real).unwrap();
        assert!((r13.value - 2.931_431_487_894_730_7).abs() < 1e-13);
        assert_eq!(r13.formula_id, FormulaId::BhRealHarmonic);
        assert_eq!(bh_constant_bound(14, ScalarField::Real).unwrap().formula_id, FormulaId::BhRealGamma);
        assert!(bh_constant_bound(0, ScalarField::Real).is_err());
    }

    #[test]
    fn real_branches_meet_smoothly() {
        let a = bh_constant_bound(13, ScalarField::Real).unwrap().value;
        let b = bh_constant_bound(14, ScalarField::Real).unwrap().value;
        assert!(b > a && b < a * 1.1, "{a} {b}");
    }

    #[test]
    fn unified_examples() {
        let r = unified_constant_bound(&PartitionSpec::identity(2), &ps("inf,inf"), ScalarField::Real)
            .unwrap();
        assert!((r.best.value - SQRT_2).abs() < 1e-15);
        let r = unified_constant_bound(&PartitionSpec::identity(3), &ps("5,5,5"), ScalarField::Complex)
            .unwrap();
        assert!((r.best.value - 4.0 / PI).abs() < 1e-14);
        assert_eq!(r.best.formula_id, FormulaId::CriticalBand);
        for p in ["inf,inf,inf", "4,4,4", "7,inf,3"] {
            let r = unified_constant_bound(&PartitionSpec::diagonal(3), &ps(p), ScalarField::Real).unwrap();
            assert_eq!(r.best.value, 1.0);
        }
        assert!(matches!(
            unified_constant_bound(&PartitionSpec::identity(2), &ps("2,2"), ScalarField::Real),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn block_quotient_improves_critical_band() {
        // m = 4, blocks (2, 2), p = 6 everywhere: |1/p| = 2/3, folded p = 3
        let part = PartitionSpec::contiguous(&[2, 2]).unwrap();
        let r = unified_constant_bound(&part, &ps("6,6,6,6"), ScalarField::Real).unwrap();
        assert_eq!(r.best.formula_id, FormulaId::BlockQuotient);
        assert!((r.best.value - SQRT_2).abs() < 1e-15);
        assert!(r.candidates.iter().any(|c| c.formula_id == FormulaId::CriticalBand));
    }
}
