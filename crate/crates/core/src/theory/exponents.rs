use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector, Frac, PSpec, SLACK};

/// Which inequality governs a given `|1/p|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `|1/p| < 1/2`.
    #[serde(rename = "subcritical")]
    SubcriticalHl,
    /// `1/2 <= |1/p| < 1`.
    CriticalBand,
    /// `|1/p| >= 1`: no inequality of this family applies.
    OutOfScope,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::SubcriticalHl => "subcritical",
            Regime::CriticalBand => "critical-band",
            Regime::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RegimeClassification {
    pub regime: Regime,
    #[serde(serialize_with = "ser_frac")]
    pub inv_sum: Frac,
}

fn ser_frac<S: serde::Serializer>(x: &Frac, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(x.to_f64())
}

fn half() -> Frac {
    Frac::ratio(1, 2)
}

pub fn classify(pspec: &PSpec) -> RegimeClassification {
    let inv_sum = pspec.inv_sum();
    let regime = if inv_sum.lt(half()) {
        Regime::SubcriticalHl
    } else if inv_sum.lt(Frac::ONE) {
        Regime::CriticalBand
    } else {
        Regime::OutOfScope
    };
    RegimeClassification { regime, inv_sum }
}

pub(crate) fn check_km(k: usize, m: usize) -> Result<()> {
    if k < 1 || k > m {
        return Err(Error::arg(format!("need 1 <= k <= m, got k = {k}, m = {m}")));
    }
    Ok(())
}

pub(crate) fn require_below_one(inv_sum: Frac) -> Result<()> {
    if !inv_sum.lt(Frac::ONE) {
        return Err(Error::hypothesis(format!(
            "|1/p| = {inv_sum} violates |1/p| < 1 (no summability exponent exists)"
        )));
    }
    Ok(())
}

fn exponent_from_recip(recip: Frac) -> Exponent {
    Exponent::from_recip(recip).expect("reciprocal lies in [0, 1] by construction")
}

/// Optimal-type exponent `ρ` for `k` blocks.
///
/// `ρ = (1 - |1/p|)^{-1}` when `1/2 <= |1/p| < 1`, and
/// `ρ = 2k / (k + 1 - 2|1/p|)` when `|1/p| < 1/2`.
pub fn hl_exponent(k: usize, m: usize, pspec: &PSpec) -> Result<Exponent> {
    check_km(k, m)?;
    if pspec.len() != m {
        return Err(Error::arg(format!("p-spec has {} entries, m = {m}", pspec.len())));
    }
    let s = pspec.inv_sum();
    require_below_one(s)?;
    Ok(exponent_from_recip(rho_recip(k, s)))
}

fn rho_recip(k: usize, s: Frac) -> Frac {
    if s.lt(half()) {
        (Frac::int(k as i64 + 1) - Frac::int(2) * s) / Frac::int(2 * k as i64)
    } else {
        Frac::ONE - s
    }
}

/// The same exponent written for `p_1 = ... = p_m = p`:
/// `p/(p-m)` for `m < p <= 2m` and `2kp/(kp + p - 2m)` for `p > 2m`.
pub fn hl_exponent_uniform(k: usize, m: usize, p: Exponent) -> Result<Exponent> {
    check_km(k, m)?;
    let r = p.recip();
    let mr = Frac::int(m as i64) * r;
    require_below_one(mr)?;
    // in terms of r = 1/p: 1/(1 - m r) and 2k/(k + 1 - 2 m r)
    let recip = if half().le(mr) {
        Frac::ONE - mr
    } else {
        let k = k as i64;
        (Frac::int(k + 1) - Frac::int(2) * mr) / Frac::int(2 * k)
    };
    Ok(exponent_from_recip(recip))
}

/// `1/q_1 + ... + 1/q_k <= (k+1)/2` for `q ∈ [1, 2]^k`.
pub fn bh_partial_admissible(k: usize, q: &ExponentVector) -> Result<bool> {
    if q.len() != k {
        return Err(Error::arg(format!("q has {} entries, k = {k}", q.len())));
    }
    for qj in q.entries() {
        if qj.recip().lt(half()) {
            return Err(Error::arg(format!("q entry {qj} outside [1, 2]")));
        }
    }
    let bound = Frac::ratio(k as i64 + 1, 2);
    Ok(le_with_slack(q.recip_sum(), bound))
}

fn le_with_slack(a: Frac, b: Frac) -> bool {
    match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => x <= y,
        _ => a.to_f64() <= b.to_f64() + SLACK,
    }
}

/// Every `q_j ∈ [(1 - |1/p|)^{-1}, 2]` and `Σ 1/q_j <= (k+1)/2 - |1/p|`.
///
/// Only meaningful for `|1/p| <= 1/2`.
pub fn hl_admissible(k: usize, pspec: &PSpec, q: &ExponentVector) -> Result<bool> {
    if q.len() != k {
        return Err(Error::arg(format!("q has {} entries, k = {k}", q.len())));
    }
    let s = pspec.inv_sum();
    if half().lt(s) {
        return Err(Error::hypothesis(format!(
            "|1/p| = {s} violates |1/p| <= 1/2 (mixed exponents exist only below 1/2)"
        )));
    }
    let lower_recip = Frac::ONE - s;
    let in_range = q
        .entries()
        .iter()
        .all(|qj| le_with_slack(qj.recip(), lower_recip) && le_with_slack(half(), qj.recip()));
    let bound = Frac::ratio(k as i64 + 1, 2) - s;
    Ok(in_range && le_with_slack(q.recip_sum(), bound))
}

/// Interpolated exponent `1/q_j = Σ_i θ_i / q^{(i)}_j`.
pub fn interpolate_exponents(qs: &[ExponentVector], weights: &[Frac]) -> Result<ExponentVector> {
    if qs.is_empty() || qs.len() != weights.len() {
        return Err(Error::arg(format!(
            "{} exponent vectors but {} weights",
            qs.len(),
            weights.len()
        )));
    }
    let len = qs[0].len();
    if qs.iter().any(|q| q.len() != len) {
        return Err(Error::arg("exponent vectors have different lengths"));
    }
    if weights.iter().any(|w| w.lt(Frac::ZERO)) {
        return Err(Error::arg("interpolation weights must be nonnegative"));
    }
    let total = weights.iter().fold(Frac::ZERO, |a, &w| a + w);
    if (total.to_f64() - 1.0).abs() > SLACK {
        return Err(Error::arg(format!("interpolation weights sum to {total}, not 1")));
    }
    let entries = (0..len)
        .map(|j| {
            let r = qs
                .iter()
                .zip(weights)
                .fold(Frac::ZERO, |acc, (q, &w)| acc + w * q.get(j).recip());
            Exponent::from_recip(r)
        })
        .collect::<Result<Vec<_>>>()?;
    ExponentVector::new(entries)
}

/// First entry of the mixed exponent `(λ_0, ρ, ..., ρ)` reached by
/// interpolation: `λ_0 = 2k / (k + 1 + 2(k-1)|1/p|)`.
pub fn lambda0(k: usize, pspec: &PSpec) -> Result<Exponent> {
    let s = pspec.inv_sum();
    if half().lt(s) {
        return Err(Error::hypothesis(format!("|1/p| = {s} violates |1/p| <= 1/2")));
    }
    if k < 1 {
        return Err(Error::arg("k must be at least 1"));
    }
    let k = k as i64;
    Ok(exponent_from_recip(
        (Frac::int(k + 1) + Frac::int(2 * (k - 1)) * s) / Frac::int(2 * k),
    ))
}

/// The two endpoint exponents and weights whose interpolation yields
/// `(λ_0, ρ, ..., ρ)`: `(1, 2, ..., 2)` and `(2k/(k+1), ...)` with
/// `θ = (2|1/p|, 1 - 2|1/p|)`.
pub fn interpolation_endpoints(k: usize, pspec: &PSpec) -> Result<(Vec<ExponentVector>, Vec<Frac>)> {
    let s = pspec.inv_sum();
    if half().lt(s) {
        return Err(Error::hypothesis(format!("|1/p| = {s} violates |1/p| <= 1/2")));
    }
    if k < 1 {
        return Err(Error::arg("k must be at least 1"));
    }
    let two = Exponent::integer(2)?;
    let mut first = vec![two; k];
    first[0] = Exponent::ONE;
    let bh = Exponent::ratio(2 * k as i64, k as i64 + 1)?;
    let theta = Frac::int(2) * s;
    Ok((
        vec![ExponentVector::new(first)?, ExponentVector::uniform(k, bh)],
        vec![theta, Frac::ONE - theta],
    ))
}

/// `α(p) = 1/2 - 1/p` for `p >= 2`, else `0`.
pub fn ksz_alpha(p: Exponent) -> Frac {
    if p.recip().le(half()) {
        half() - p.recip()
    } else {
        Frac::ZERO
    }
}

/// Growth exponent of the random-sign norm bound, `1/2 + Σ α(p_j)`.
pub fn ksz_norm_exponent(pspec: &PSpec) -> Frac {
    pspec
        .entries()
        .iter()
        .fold(half(), |acc, &p| acc + ksz_alpha(p))
}

/// Lower bounds on the optimal exponent for `|1/p| <= 1/2`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LowerBounds {
    /// `2k / (m + 1 - 2|1/p|)`, from random sign forms.
    #[serde(serialize_with = "ser_frac")]
    pub rho_ksz: Frac,
    /// `1 / (1 - |1/p|)`, from diagonal forms.
    #[serde(serialize_with = "ser_frac")]
    pub rho_diag: Frac,
    /// `(m + 1 - 2|1/p|) / (2 - 2|1/p|)`; `k` at or above it selects `rho_ksz`.
    #[serde(serialize_with = "ser_frac")]
    pub threshold: Frac,
    /// The larger of the two bounds.
    #[serde(serialize_with = "ser_frac")]
    pub s: Frac,
}

pub fn optimality_lower_bounds(k: usize, m: usize, pspec: &PSpec) -> Result<LowerBounds> {
    check_km(k, m)?;
    let s = pspec.inv_sum();
    if half().lt(s) {
        return Err(Error::hypothesis(format!("|1/p| = {s} violates |1/p| <= 1/2")));
    }
    let two = Frac::int(2);
    let top = Frac::int(m as i64 + 1) - two * s;
    let rho_ksz = Frac::int(2 * k as i64) / top;
    let rho_diag = Frac::ONE / (Frac::ONE - s);
    let threshold = top / (two - two * s);
    let pick = if threshold.le(Frac::int(k as i64)) { rho_ksz } else { rho_diag };
    Ok(LowerBounds {
        rho_ksz,
        rho_diag,
        threshold,
        s: pick,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Rational;

    fn ps(s: &str) -> PSpec {
        PSpec::parse(s).unwrap()
    }

    fn qv(s: &str) -> ExponentVector {
        ExponentVector::parse(s).unwrap()
    }

    fn exact(x: Frac) -> Rational {
        x.as_exact().expect("exact")
    }

    #[test]
    fn regimes() {
        assert_eq!(classify(&ps("inf,inf")).regime, Regime::SubcriticalHl);
        assert_eq!(classify(&ps("4,4")).regime, Regime::CriticalBand);
        assert_eq!(classify(&ps("2,2")).regime, Regime::OutOfScope);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(hl_exponent(2, 2, &ps("inf,inf")).unwrap().to_string(), "4/3");
        assert_eq!(hl_exponent(1, 2, &ps("4,4")).unwrap().to_string(), "2");
        assert_eq!(hl_exponent(2, 2, &ps("8,8")).unwrap().to_string(), "8/5");
        let eight = Exponent::integer(8).unwrap();
        assert_eq!(hl_exponent_uniform(2, 2, eight).unwrap().to_string(), "8/5");
        assert!(matches!(hl_exponent(1, 2, &ps("2,2")), Err(Error::Hypothesis(_))));
        assert!(hl_exponent(3, 2, &ps("inf,inf")).is_err());
    }

    #[test]
    fn uniform_entry_agrees_with_general() {
        for m in 1..=6usize {
            for k in 1..=m {
                for p in (m as i64 + 1)..=(4 * m as i64) {
                    let pe = Exponent::integer(p).unwrap();
                    let a = hl_exponent_uniform(k, m, pe).unwrap();
                    let b = hl_exponent(k, m, &PSpec::uniform(m, pe)).unwrap();
                    assert_eq!(exact(a.recip()), exact(b.recip()), "k={k} m={m} p={p}");
                }
            }
        }
    }

    #[test]
    fn bh_admissibility() {
        assert!(bh_partial_admissible(2, &qv("4/3,4/3")).unwrap());
        assert!(!bh_partial_admissible(2, &qv("1,1")).unwrap());
        assert!(bh_partial_admissible(2, &qv("8/7,8/5")).unwrap());
        assert!(bh_partial_admissible(2, &qv("3,2")).is_err());
    }

    #[test]
    fn hl_admissibility() {
        assert!(hl_admissible(2, &ps("4,4"), &qv("2,2")).unwrap());
        assert!(hl_admissible(2, &ps("inf,inf"), &qv("4/3,4/3")).unwrap());
        assert!(!hl_admissible(2, &ps("4,4"), &qv("1.9,1.9")).unwrap());
        assert!(matches!(
            hl_admissible(2, &ps("3,3"), &qv("2,2")),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn interpolation_examples() {
        let q = interpolate_exponents(&[qv("4/3,2")], &[Frac::ONE]).unwrap();
        assert_eq!(q.to_string(), "(4/3,2)");
        let half = Frac::ratio(1, 2);
        let q = interpolate_exponents(&[qv("1,2"), qv("4/3,4/3")], &[half, half]).unwrap();
        assert_eq!(q.to_string(), "(8/7,8/5)");
        let p = ps("8,8");
        assert_eq!(lambda0(2, &p).unwrap().to_string(), "8/7");
        assert_eq!(hl_exponent(2, 2, &p).unwrap().to_string(), "8/5");
        assert!(interpolate_exponents(&[qv("1"), qv("2")], &[half, Frac::ratio(1, 3)]).is_err());
    }

    #[test]
    fn ksz_exponents() {
        assert!(ksz_alpha(Exponent::integer(2).unwrap()).is_zero());
        assert_eq!(exact(ksz_alpha(Exponent::INFINITY)), Rational::new(1, 2));
        assert!(ksz_alpha(Exponent::ratio(4, 3).unwrap()).is_zero());
        assert_eq!(exact(ksz_norm_exponent(&ps("inf,inf"))), Rational::new(3, 2));
        assert_eq!(exact(ksz_norm_exponent(&ps("2,2"))), Rational::new(1, 2));
        assert_eq!(exact(ksz_norm_exponent(&ps("4,inf,inf"))), Rational::new(7, 4));
    }

    #[test]
    fn lower_bound_examples() {
        let lb = optimality_lower_bounds(2, 2, &ps("inf,inf")).unwrap();
        assert_eq!(exact(lb.rho_ksz), Rational::new(4, 3));
        assert_eq!(exact(lb.s), Rational::new(4, 3));
        let lb = optimality_lower_bounds(1, 2, &ps("inf,inf")).unwrap();
        assert_eq!(exact(lb.rho_ksz), Rational::new(2, 3));
        assert_eq!(exact(lb.rho_diag), Rational::from_integer(1));
        assert_eq!(exact(lb.s), Rational::from_integer(1));
        let lb = optimality_lower_bounds(2, 4, &PSpec::infinite(4)).unwrap();
        assert_eq!(exact(lb.threshold), Rational::new(5, 2));
        assert_eq!(exact(lb.s), Rational::from_integer(1));
    }
}
