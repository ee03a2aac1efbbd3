use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector, PSpec};
use crate::form::{MultilinearForm, PartitionSpec, ScalarField};
use crate::mixed_norm::{lq_of_magnitudes, mixed_norm};
use crate::norm::{diagonal_norm, upper_bound_diagonal, NormConfig};
use crate::tensor::Scalar;

use super::ksz::ksz_form;
use super::zalduendo::{zalduendo_coefficients, zalduendo_form};

/// Default slope above which a ratio counts as growing.
pub const GROWTH_THRESHOLD: f64 = 0.05;

/// Mixed norm of the block coefficients of `form` under partition `part`.
pub fn lhs_for_family(form: &MultilinearForm, part: &PartitionSpec, q: &ExponentVector) -> Result<f64> {
    mixed_norm(&form.block_value_tensor(part)?, q)
}

/// [`lhs_for_family`] with the flat exponent `s` on every block.
pub fn lhs_flat(form: &MultilinearForm, part: &PartitionSpec, s: Exponent) -> Result<f64> {
    lhs_for_family(form, part, &ExponentVector::uniform(part.k(), s))
}

/// One family member's two sides at extent `n`.
#[derive(Clone, Copy, Debug)]
pub struct FamilySample {
    pub lhs: f64,
    pub norm: f64,
    pub certified: bool,
}

/// A sequence of forms indexed by the extent `N`.
pub trait FormFamily: Sync {
    fn name(&self) -> String;
    fn sample(&self, n: usize, part: &PartitionSpec, q: &ExponentVector, cfg: &NormConfig)
        -> Result<FamilySample>;
}

/// Best-of-draws random sign forms.
#[derive(Clone, Debug)]
pub struct KszFamily {
    pub m: usize,
    pub pspec: PSpec,
    pub seed: u64,
    pub draws: usize,
}

impl FormFamily for KszFamily {
    fn name(&self) -> String {
        "ksz".into()
    }

    fn sample(
        &self,
        n: usize,
        part: &PartitionSpec,
        q: &ExponentVector,
        cfg: &NormConfig,
    ) -> Result<FamilySample> {
        let (form, est) = ksz_form(ScalarField::Real, self.m, n, &self.pspec, self.seed, self.draws, cfg)?;
        Ok(FamilySample {
            lhs: lhs_for_family(&form, part, q)?,
            norm: est.value,
            certified: est.certified,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZalduendoMode {
    /// Closed forms on the diagonal; no tensor is built, so `N` can be large.
    Analytic,
    /// Build the dense form and run the generic code paths.
    Materialized,
}

/// Diagonal forms with coefficients `j^β`.
#[derive(Clone, Debug)]
pub struct ZalduendoFamily {
    pub m: usize,
    pub pspec: PSpec,
    pub beta: f64,
    pub mode: ZalduendoMode,
}

impl FormFamily for ZalduendoFamily {
    fn name(&self) -> String {
        "zalduendo".into()
    }

    fn sample(
        &self,
        n: usize,
        part: &PartitionSpec,
        q: &ExponentVector,
        _cfg: &NormConfig,
    ) -> Result<FamilySample> {
        match self.mode {
            ZalduendoMode::Analytic => {
                if part.m() != self.m {
                    return Err(Error::Structural(format!(
                        "partition covers {} slots, family has m = {}",
                        part.m(),
                        self.m
                    )));
                }
                let c = zalduendo_coefficients(n, self.beta);
                // the block array is diagonal, so only the outermost exponent matters
                let lhs = lq_of_magnitudes(&c, q.get(0));
                let diag: Vec<Scalar> = c.iter().map(|&x| Scalar::new(x, 0.0)).collect();
                let norm = upper_bound_diagonal(&diag, &self.pspec)
                    .unwrap_or_else(|_| c.iter().copied().fold(0.0, f64::max));
                Ok(FamilySample {
                    lhs,
                    norm,
                    certified: true,
                })
            }
            ZalduendoMode::Materialized => {
                let form = zalduendo_form(self.m, n, &self.pspec, self.beta)?;
                let est = diagonal_norm(&form)?;
                Ok(FamilySample {
                    lhs: lhs_for_family(&form, part, q)?,
                    norm: est.value,
                    certified: est.certified,
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProbePoint {
    #[serde(rename = "N")]
    pub n: usize,
    pub lhs: f64,
    pub norm: f64,
    pub certified: bool,
    pub ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Grows,
    Bounded,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Grows => "Grows",
            Verdict::Bounded => "Bounded",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

impl Verdict {
    /// Two-sigma rule around `threshold`.
    pub fn classify(slope: f64, stderr: f64, threshold: f64) -> Verdict {
        if slope - 2.0 * stderr > threshold {
            Verdict::Grows
        } else if slope + 2.0 * stderr < threshold {
            Verdict::Bounded
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub family: String,
    /// The flat exponent, or `None` for a genuinely mixed `q`.
    pub exponent_s: Option<f64>,
    pub q: ExponentVector,
    pub points: Vec<ProbePoint>,
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub verdict: Verdict,
    pub growth_threshold: f64,
}

/// Least-squares fit of `ln y = a ln x + b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; NaN with only two points.
    pub stderr: f64,
}

pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 2 {
        return Err(Error::arg("a slope needs at least two points"));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::arg("log-log fit needs positive coordinates"));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::arg("log-log fit needs at least two distinct x values"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let stderr = if points.len() > 2 {
        let rss: f64 = lx
            .iter()
            .zip(&ly)
            .map(|(x, y)| (y - intercept - slope * x).powi(2))
            .sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Ok(LogLogFit {
        slope,
        intercept,
        stderr,
    })
}

/// Fits the growth of `lhs / ‖T‖` in `N` and classifies it.
pub fn ratio_probe(
    family: &dyn FormFamily,
    part: &PartitionSpec,
    q: &ExponentVector,
    n_list: &[usize],
    cfg: &NormConfig,
) -> Result<ProbeResult> {
    ratio_probe_with_threshold(family, part, q, n_list, cfg, GROWTH_THRESHOLD)
}

pub fn ratio_probe_with_threshold(
    family: &dyn FormFamily,
    part: &PartitionSpec,
    q: &ExponentVector,
    n_list: &[usize],
    cfg: &NormConfig,
    threshold: f64,
) -> Result<ProbeResult> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 {
        return Err(Error::arg("a probe needs at least three distinct values of N"));
    }
    if q.len() != part.k() {
        return Err(Error::arg(format!("q has {} entries, k = {}", q.len(), part.k())));
    }
    let samples: Vec<Result<FamilySample>> = ns
        .par_iter()
        .map(|&n| family.sample(n, part, q, cfg))
        .collect();
    let mut points = Vec::with_capacity(ns.len());
    for (&n, sample) in ns.iter().zip(samples) {
        let s = sample?;
        if s.norm <= 0.0 {
            return Err(Error::Degenerate(format!("norm estimate vanishes at N = {n}")));
        }
        points.push(ProbePoint {
            n,
            lhs: s.lhs,
            norm: s.norm,
            certified: s.certified,
            ratio: s.lhs / s.norm,
        });
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.n as f64, p.ratio)).collect();
    let fit = fit_loglog_slope(&xy)?;
    Ok(ProbeResult {
        family: family.name(),
        exponent_s: q.common().map(|s| s.value()),
        q: q.clone(),
        points,
        slope: fit.slope,
        intercept: fit.intercept,
        slope_stderr: fit.stderr,
        verdict: Verdict::classify(fit.slope, fit.stderr, threshold),
        growth_threshold: threshold,
    })
}
