use serde::Serialize;

use crate::error::Result;
use crate::exponent::Frac;
use crate::extremal::{
    ratio_probe, zalduendo_beta, KszFamily, ProbeResult, Verdict, ZalduendoFamily, ZalduendoMode,
};
use crate::norm::NormConfig;
use crate::theory::ksz_norm_exponent;

use super::config::{ExperimentConfig, ExperimentKind};

/// A probe with the verdict theory predicts, when it predicts one.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    #[serde(flatten)]
    pub result: ProbeResult,
    /// Slope of the ratio the norm growth rate predicts (random sign forms only).
    pub theory_slope: Option<f64>,
    pub beta: Option<f64>,
    pub expected: Option<Verdict>,
}

impl ProbeReport {
    /// False only when a prediction exists and the fit disagrees with it.
    pub fn matches_expectation(&self) -> bool {
        self.expected.map_or(true, |v| v == self.result.verdict)
    }
}

/// `ksz-probe` and `zalduendo-probe` subcommands.
pub fn run_probe(config: &ExperimentConfig) -> Result<ProbeReport> {
    config.validate()?;
    let m = config.m();
    let pspec = config.pspec()?;
    let part = config.partition()?;
    let q = config.q()?;
    let n_list = config.n_list();
    let norm_cfg = NormConfig::default()
        .with_restarts(config.restarts())
        .with_seed(config.seed());
    if config.kind()? == ExperimentKind::KszProbe {
        let family = KszFamily { m, pspec: pspec.clone(), seed: config.seed(), draws: config.draws() };
        let result = ratio_probe(&family, &part, &q, &n_list, &norm_cfg)?;
        // lhs grows like N^{Σ 1/q_j}, the norm like N^{1/2 + Σ α(p_j)}
        let theory = (q.recip_sum() - ksz_norm_exponent(&pspec)).to_f64();
        let expected = q.common().map(|_| if theory > 0.0 { Verdict::Grows } else { Verdict::Bounded });
        return Ok(ProbeReport { result, theory_slope: Some(theory), beta: None, expected });
    }
    let s = q.get(0);
    let beta = match config.beta {
        Some(b) => b,
        None => zalduendo_beta(s.value(), &pspec)?,
    };
    let family = ZalduendoFamily { m, pspec: pspec.clone(), beta, mode: ZalduendoMode::Analytic };
    let result = ratio_probe(&family, &part, &q, &n_list, &norm_cfg)?;
    // Σ j^{βs} converges iff βs < -1; the Hölder norm bound iff βρ < -1
    let lhs_converges = s.is_infinite() || beta * s.value() < -1.0;
    let norm_converges = beta < -(Frac::ONE - pspec.inv_sum()).to_f64();
    let expected = if lhs_converges {
        Some(Verdict::Bounded)
    } else if norm_converges {
        Some(Verdict::Grows)
    } else {
        None
    };
    Ok(ProbeReport { result, theory_slope: None, beta: Some(beta), expected })
}
