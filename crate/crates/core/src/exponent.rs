//! Extended-real exponents in `[1, ∞]` and the small amount of arithmetic the
//! inequality tables need.
//!
//! Every exponent is stored through its reciprocal. Reciprocals that come from
//! integers or decimal/fraction literals stay exact fractions ([`Frac::Exact`]),
//! so boundary cases such as `1/q_1 + ... + 1/q_k = (k+1)/2` compare exactly.
//! Anything that overflows `i64` or enters as a float falls back to `f64`,
//! and comparisons then use a `1e-12` slack.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Comparison slack used whenever either side is inexact.
pub const SLACK: f64 = 1e-12;

/// A real number that stays an exact fraction while its inputs allow.
#[derive(Clone, Copy, Debug)]
pub enum Frac {
    Exact(Rational),
    Approx(f64),
}

impl Frac {
    pub const ZERO: Frac = Frac::Exact(Ratio::new_raw(0, 1));
    pub const ONE: Frac = Frac::Exact(Ratio::new_raw(1, 1));

    pub fn int(n: i64) -> Frac {
        Frac::Exact(Rational::from_integer(n))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Frac {
        Frac::Exact(Rational::new(num, den))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Frac::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Frac::Approx(x) => x,
        }
    }

    pub fn as_exact(self) -> Option<Rational> {
        match self {
            Frac::Exact(r) => Some(r),
            Frac::Approx(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Frac::Exact(_))
    }

    fn combine(
        self,
        rhs: Frac,
        exact: impl Fn(&Rational, &Rational) -> Option<Rational>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Frac {
        if let (Frac::Exact(a), Frac::Exact(b)) = (self, rhs) {
            if let Some(r) = exact(&a, &b) {
                return Frac::Exact(r);
            }
        }
        Frac::Approx(float(self.to_f64(), rhs.to_f64()))
    }

    /// Multiplicative inverse, `None` at zero.
    pub fn inverse(self) -> Option<Frac> {
        if self.is_zero() {
            return None;
        }
        Some(Frac::ONE / self)
    }

    pub fn is_zero(self) -> bool {
        match self {
            Frac::Exact(r) => r.is_zero(),
            Frac::Approx(x) => x == 0.0,
        }
    }

    /// Three-way comparison; inexact operands within [`SLACK`] compare equal.
    pub fn compare(self, rhs: Frac) -> Ordering {
        match (self, rhs) {
            (Frac::Exact(a), Frac::Exact(b)) => a.cmp(&b),
            _ => {
                let (a, b) = (self.to_f64(), rhs.to_f64());
                if (a - b).abs() <= SLACK * (1.0 + a.abs().max(b.abs())) {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn le(self, rhs: Frac) -> bool {
        self.compare(rhs) != Ordering::Greater
    }

    pub fn lt(self, rhs: Frac) -> bool {
        self.compare(rhs) == Ordering::Less
    }

    pub fn approx_eq(self, rhs: Frac) -> bool {
        self.compare(rhs) == Ordering::Equal
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, rhs: Frac) -> Frac {
        self.combine(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl Sub for Frac {
    type Output = Frac;
    fn sub(self, rhs: Frac) -> Frac {
        self.combine(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, rhs: Frac) -> Frac {
        self.combine(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Div for Frac {
    type Output = Frac;
    fn div(self, rhs: Frac) -> Frac {
        self.combine(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac::ZERO - self
    }
}

impl From<i64> for Frac {
    fn from(n: i64) -> Frac {
        Frac::int(n)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frac::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Frac::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Frac::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `"3"`, `"4/3"`, `"2.5"` exactly and anything else float-like approximately.
pub fn parse_frac(s: &str) -> Result<Frac> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse number {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Frac::ratio(n, d));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Frac::int(n));
    }
    if let Some(exact) = parse_decimal(s) {
        return Ok(Frac::Exact(exact));
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(bad());
    }
    Ok(Frac::Approx(x))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() && int.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let den = 10i64.checked_pow(frac.len() as u32)?;
    Some(Rational::new(sign * num, den))
}

/// An exponent `p ∈ [1, ∞]`, held as its reciprocal `1/p ∈ [0, 1]`.
#[derive(Clone, Copy, Debug)]
pub struct Exponent {
    recip: Frac,
}

impl Exponent {
    pub const INFINITY: Exponent = Exponent { recip: Frac::ZERO };
    pub const ONE: Exponent = Exponent { recip: Frac::ONE };

    pub fn from_recip(recip: Frac) -> Result<Exponent> {
        if recip.lt(Frac::ZERO) || Frac::ONE.lt(recip) {
            return Err(Error::arg(format!(
                "exponent reciprocal {recip} outside [0, 1] (need p >= 1)"
            )));
        }
        Ok(Exponent { recip })
    }

    pub fn integer(p: i64) -> Result<Exponent> {
        if p < 1 {
            return Err(Error::arg(format!("exponent {p} < 1")));
        }
        Ok(Exponent {
            recip: Frac::ratio(1, p),
        })
    }

    /// `num/den` as an exact exponent.
    pub fn ratio(num: i64, den: i64) -> Result<Exponent> {
        if den == 0 || num == 0 {
            return Err(Error::arg(format!("invalid exponent {num}/{den}")));
        }
        Exponent::from_recip(Frac::ratio(den, num))
    }

    /// Float constructor; integral values become exact, `f64::INFINITY` is `∞`.
    pub fn from_f64(p: f64) -> Result<Exponent> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::arg(format!("exponent {p} < 1")));
        }
        if p.is_infinite() {
            return Ok(Exponent::INFINITY);
        }
        if p.fract() == 0.0 && p < 1e15 {
            return Exponent::integer(p as i64);
        }
        Exponent::from_recip(Frac::Approx(1.0 / p))
    }

    pub fn recip(self) -> Frac {
        self.recip
    }

    pub fn recip_f64(self) -> f64 {
        self.recip.to_f64()
    }

    /// The exponent as a float, `f64::INFINITY` for `∞`.
    pub fn value(self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            1.0 / self.recip.to_f64()
        }
    }

    pub fn is_infinite(self) -> bool {
        self.recip.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.recip.compare(Frac::ONE) == Ordering::Equal
    }

    /// Conjugate exponent `p*` with `1/p + 1/p* = 1`.
    pub fn conjugate(self) -> Exponent {
        Exponent {
            recip: Frac::ONE - self.recip,
        }
    }

    /// Same exponent within the comparison slack.
    pub fn approx_eq(self, other: Exponent) -> bool {
        self.recip.approx_eq(other.recip)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.recip {
            _ if self.is_infinite() => f.write_str("inf"),
            Frac::Exact(r) => {
                let p = r.recip();
                if p.is_integer() {
                    write!(f, "{}", p.numer())
                } else {
                    write!(f, "{}/{}", p.numer(), p.denom())
                }
            }
            Frac::Approx(x) => write!(f, "{}", 1.0 / x),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Exponent> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Exponent::INFINITY);
        }
        let p = parse_frac(t)?;
        let recip = p
            .inverse()
            .ok_or_else(|| Error::arg(format!("exponent {t} < 1")))?;
        Exponent::from_recip(recip)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.recip {
            _ if self.is_infinite() => s.serialize_str("inf"),
            Frac::Exact(r) if r.recip().is_integer() => s.serialize_i64(*r.recip().numer()),
            Frac::Exact(_) => s.serialize_str(&self.to_string()),
            Frac::Approx(_) => s.serialize_f64(self.value()),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Exponent, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Int(p) => Exponent::integer(p),
            Raw::Float(p) => Exponent::from_f64(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

fn parse_list(s: &str) -> Result<Vec<Exponent>> {
    s.split([',', ';'])
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn join(entries: &[Exponent], sep: &str) -> String {
    entries
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// The exponents `p_1, ..., p_m` of the domain spaces `ℓ_{p_j}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PSpec(Vec<Exponent>);

impl PSpec {
    pub fn new(entries: Vec<Exponent>) -> Result<PSpec> {
        if entries.is_empty() {
            return Err(Error::arg("p-spec needs at least one exponent"));
        }
        Ok(PSpec(entries))
    }

    pub fn uniform(m: usize, p: Exponent) -> PSpec {
        PSpec(vec![p; m.max(1)])
    }

    pub fn infinite(m: usize) -> PSpec {
        PSpec::uniform(m, Exponent::INFINITY)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Exponent] {
        &self.0
    }

    pub fn get(&self, j: usize) -> Exponent {
        self.0[j]
    }

    /// `|1/p| = 1/p_1 + ... + 1/p_m`, recomputed on every call.
    pub fn inv_sum(&self) -> Frac {
        self.0.iter().fold(Frac::ZERO, |acc, p| acc + p.recip())
    }

    pub fn all_infinite(&self) -> bool {
        self.0.iter().all(|p| p.is_infinite())
    }

    /// `Some(p)` when every entry equals `p`.
    pub fn common(&self) -> Option<Exponent> {
        let first = self.0[0];
        self.0.iter().all(|p| p.approx_eq(first)).then_some(first)
    }

    pub fn parse(s: &str) -> Result<PSpec> {
        PSpec::new(parse_list(s)?)
    }

    /// `;`-separated rendering, safe inside CSV cells.
    pub fn compact(&self) -> String {
        join(&self.0, ";")
    }
}

impl fmt::Display for PSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0, ","))
    }
}

/// A mixed exponent `q = (q_1, ..., q_k)` applied innermost-last.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<Exponent>);

impl ExponentVector {
    pub fn new(entries: Vec<Exponent>) -> Result<ExponentVector> {
        if entries.is_empty() {
            return Err(Error::arg("exponent vector needs at least one entry"));
        }
        Ok(ExponentVector(entries))
    }

    pub fn uniform(k: usize, q: Exponent) -> ExponentVector {
        ExponentVector(vec![q; k.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Exponent] {
        &self.0
    }

    pub fn get(&self, j: usize) -> Exponent {
        self.0[j]
    }

    /// `1/q_1 + ... + 1/q_k`.
    pub fn recip_sum(&self) -> Frac {
        self.0.iter().fold(Frac::ZERO, |acc, q| acc + q.recip())
    }

    pub fn common(&self) -> Option<Exponent> {
        let first = self.0[0];
        self.0.iter().all(|q| q.approx_eq(first)).then_some(first)
    }

    pub fn parse(s: &str) -> Result<ExponentVector> {
        ExponentVector::new(parse_list(s)?)
    }

    pub fn compact(&self) -> String {
        join(&self.0, ";")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0, ","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert!(Exponent::ONE.conjugate().is_infinite());
        assert!(Exponent::INFINITY.conjugate().is_one());
        let p = Exponent::integer(4).unwrap();
        assert_eq!(p.conjugate().to_string(), "4/3");
        let sum = p.recip() + p.conjugate().recip();
        assert_eq!(sum.as_exact(), Some(Rational::from_integer(1)));
    }

    #[test]
    fn parse_and_display() {
        for (text, shown) in [("inf", "inf"), ("4/3", "4/3"), ("2.5", "5/2"), ("8", "8"), ("1", "1")] {
            let p: Exponent = text.parse().unwrap();
            assert_eq!(p.to_string(), shown);
        }
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("0".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
        assert!(Exponent::from_f64(0.99).is_err());
    }

    #[test]
    fn inv_sum_exact() {
        let p = PSpec::parse("4,8,inf").unwrap();
        assert_eq!(p.inv_sum().as_exact(), Some(Rational::new(3, 8)));
        assert!(PSpec::infinite(3).inv_sum().is_zero());
        assert_eq!(PSpec::parse("inf;inf").unwrap().compact(), "inf;inf");
    }

    #[test]
    fn approx_fallback_compares_with_slack() {
        let a = Frac::Approx(0.1 + 0.2);
        assert!(a.approx_eq(Frac::ratio(3, 10)));
        assert!(a.le(Frac::ratio(3, 10)));
        assert!(Frac::ratio(1, 3).lt(Frac::ratio(1, 2)));
    }

    #[test]
    fn overflow_falls_back_to_float() {
        let big = Frac::ratio(1, (1 << 61) - 1);
        let x = big + Frac::ratio(1, (1 << 31) - 1);
        assert!(!x.is_exact());
        assert!(x.to_f64() > 0.0);
    }

    #[test]
    fn serde_forms() {
        let p = PSpec::parse("inf,4,4/3").unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["inf",4,"4/3"]"#);
        let back: PSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_string(), "(inf,4,4/3)");
        let from_float: PSpec = serde_json::from_str("[2.5]").unwrap();
        assert!((from_float.get(0).value() - 2.5).abs() < 1e-15);
    }
}
