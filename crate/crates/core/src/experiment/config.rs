use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector, Frac, PSpec};
use crate::form::{MultilinearForm, PartitionSpec, ScalarField, DEFAULT_ENTRY_BUDGET};
use crate::theory::{classify, hl_admissible, hl_exponent, Regime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Verify,
    KszProbe,
    ZalduendoProbe,
    Constants,
    Exponent,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<OutputFormat> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

/// Parameters of one run. Every field is optional so a config file and
/// command-line flags can be layered; [`ExperimentConfig::resolved`] fills
/// in defaults.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<ExperimentKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<ScalarField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Common extent `N` of every slot.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<PSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<ExponentVector>,
    /// Flat exponent; shorthand for `q = (s, ..., s)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Exponent>,
    /// Contiguous block multiplicities `n_1, ..., n_k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// JSON form file used instead of random forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($f:ident),*) => {
        ExperimentConfig { $($f: $top.$f.clone().or_else(|| $base.$f.clone()),)* }
    };
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(&self, base: &ExperimentConfig) -> ExperimentConfig {
        overlay!(
            self, base, kind, seed, field, m, k, n, n_list, p, q, s, partition, restarts, draws,
            trials, beta, form, out, format
        )
    }

    pub fn kind(&self) -> Result<ExperimentKind> {
        self.kind.ok_or_else(|| Error::arg("no experiment kind given"))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn field(&self) -> ScalarField {
        self.field.unwrap_or(ScalarField::Real)
    }

    pub fn m(&self) -> usize {
        self.m
            .or_else(|| self.p.as_ref().map(PSpec::len))
            .or_else(|| self.partition.as_ref().map(|ns| ns.iter().sum()))
            .unwrap_or(2)
    }

    pub fn k(&self) -> usize {
        self.k
            .or_else(|| self.partition.as_ref().map(Vec::len))
            .unwrap_or_else(|| match self.kind {
                Some(ExperimentKind::ZalduendoProbe) => 1,
                _ => self.m(),
            })
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(4)
    }

    pub fn n_list(&self) -> Vec<usize> {
        self.n_list.clone().unwrap_or_else(|| match (self.kind, self.m()) {
            (Some(ExperimentKind::ZalduendoProbe), _) => vec![100, 1_000, 10_000, 100_000, 1_000_000],
            (_, 2) => vec![4, 8, 16, 32, 64],
            _ => vec![4, 8, 16, 32],
        })
    }

    pub fn pspec(&self) -> Result<PSpec> {
        match &self.p {
            Some(p) if p.len() == 1 && self.m() > 1 => Ok(PSpec::uniform(self.m(), p.get(0))),
            Some(p) => Ok(p.clone()),
            None => Ok(PSpec::infinite(self.m())),
        }
    }

    pub fn partition(&self) -> Result<PartitionSpec> {
        match &self.partition {
            Some(ns) => PartitionSpec::contiguous(ns),
            None => PartitionSpec::balanced(self.m(), self.k()),
        }
    }

    pub fn restarts(&self) -> usize {
        self.restarts.unwrap_or(32)
    }

    pub fn draws(&self) -> usize {
        self.draws.unwrap_or(8)
    }

    pub fn trials(&self) -> usize {
        self.trials.unwrap_or(10)
    }

    pub fn format(&self) -> OutputFormat {
        self.format.unwrap_or_default()
    }

    /// The summation exponent: `q` if given, else flat `s`, else the
    /// theoretical exponent for the regime.
    pub fn q(&self) -> Result<ExponentVector> {
        if let Some(q) = &self.q {
            return Ok(q.clone());
        }
        let k = self.k();
        if let Some(s) = self.s {
            return Ok(ExponentVector::uniform(k, s));
        }
        let rho = hl_exponent(k, self.m(), &self.pspec()?)?;
        Ok(ExponentVector::uniform(k, rho))
    }

    /// Shape, field and exponents taken from `form`; explicitly set values
    /// must agree with it.
    pub fn with_form(&self, form: &MultilinearForm) -> Result<ExperimentConfig> {
        if self.m.is_some_and(|m| m != form.m()) {
            return Err(Error::arg(format!("form file has m = {}, configuration has m = {}", form.m(), self.m())));
        }
        if let Some(p) = &self.p {
            if p.compact() != form.pspec().compact() {
                return Err(Error::arg(format!("form file has p = {}, configuration has p = {p}", form.pspec())));
            }
        }
        if self.field.is_some_and(|f| f != form.field()) {
            return Err(Error::arg(format!("form file is {}, configuration asks for {}", form.field(), self.field())));
        }
        Ok(ExperimentConfig {
            m: Some(form.m()),
            p: Some(form.pspec().clone()),
            field: Some(form.field()),
            n: None,
            trials: None,
            ..self.clone()
        })
    }

    /// Copy with every default written out, for provenance.
    pub fn resolved(&self) -> Result<ExperimentConfig> {
        let kind = self.kind()?;
        if let (ExperimentKind::Verify, Some(path)) = (kind, &self.form) {
            let form = MultilinearForm::load(path)?;
            return ExperimentConfig { form: None, ..self.with_form(&form)? }
                .resolved()
                .map(|c| ExperimentConfig { form: self.form.clone(), n: None, trials: None, ..c });
        }
        let mut out = self.clone();
        out.seed = Some(self.seed());
        out.field = Some(self.field());
        out.format = Some(self.format());
        match kind {
            ExperimentKind::Verify | ExperimentKind::KszProbe | ExperimentKind::ZalduendoProbe => {
                out.m = Some(self.m());
                out.k = Some(self.k());
                out.p = Some(self.pspec()?);
                out.partition = Some(self.partition()?.multiplicities());
                out.restarts = Some(self.restarts());
                if kind != ExperimentKind::ZalduendoProbe || self.s.is_some() || self.q.is_some() {
                    out.q = Some(self.q()?);
                    out.s = None;
                }
            }
            _ => {}
        }
        match kind {
            ExperimentKind::Verify => {
                out.n = Some(self.n());
                out.trials = Some(self.trials());
            }
            ExperimentKind::KszProbe => {
                out.n_list = Some(self.n_list());
                out.draws = Some(self.draws());
            }
            ExperimentKind::ZalduendoProbe => out.n_list = Some(self.n_list()),
            ExperimentKind::Sweep => out.restarts = Some(self.restarts()),
            _ => {}
        }
        Ok(out)
    }

    /// Checks the parameters against the hypotheses of the inequality the
    /// experiment exercises. Error messages name the violated hypothesis.
    pub fn validate(&self) -> Result<()> {
        let kind = self.kind()?;
        if self.restarts() == 0 {
            return Err(Error::arg("restarts must be at least 1"));
        }
        match kind {
            ExperimentKind::Verify => self.validate_verify(),
            ExperimentKind::KszProbe => self.validate_ksz(),
            ExperimentKind::ZalduendoProbe => self.validate_zalduendo(),
            ExperimentKind::Constants | ExperimentKind::Exponent | ExperimentKind::Sweep => {
                if let Some(k) = self.k {
                    if k == 0 {
                        return Err(Error::arg("k must be at least 1"));
                    }
                }
                if let Some(m) = self.m {
                    if m == 0 {
                        return Err(Error::arg("m must be at least 1"));
                    }
                }
                Ok(())
            }
        }
    }

    fn validate_shape(&self) -> Result<(PSpec, PartitionSpec)> {
        let m = self.m();
        let k = self.k();
        if m == 0 {
            return Err(Error::arg("m must be at least 1"));
        }
        if k == 0 || k > m {
            return Err(Error::hypothesis(format!("1 <= k <= m fails: k = {k}, m = {m}")));
        }
        let pspec = self.pspec()?;
        if pspec.len() != m {
            return Err(Error::arg(format!("p has {} entries but m = {m}", pspec.len())));
        }
        let part = self.partition()?;
        if part.m() != m || part.k() != k {
            return Err(Error::hypothesis(format!(
                "n_1 + ... + n_k = m fails: partition {:?} for m = {m}, k = {k}",
                part.multiplicities()
            )));
        }
        Ok((pspec, part))
    }

    fn validate_extent(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::arg("N must be at least 1"));
        }
        let entries = (n as f64).powi(self.m() as i32);
        if entries > DEFAULT_ENTRY_BUDGET as f64 {
            return Err(Error::Resource(format!(
                "N^m = {n}^{} exceeds the entry budget {DEFAULT_ENTRY_BUDGET}",
                self.m()
            )));
        }
        Ok(())
    }

    fn validate_verify(&self) -> Result<()> {
        let (pspec, _) = self.validate_shape()?;
        if self.form.is_none() {
            self.validate_extent(self.n())?;
            if self.trials() == 0 {
                return Err(Error::arg("trials must be at least 1"));
            }
        }
        let class = classify(&pspec);
        if class.regime == Regime::OutOfScope {
            return Err(Error::hypothesis(format!(
                "|1/p| = {} violates |1/p| < 1 (outside the unified Hardy–Littlewood range)",
                class.inv_sum
            )));
        }
        let k = self.k();
        let q = self.q()?;
        if q.len() != k {
            return Err(Error::arg(format!("q has {} entries but k = {k}", q.len())));
        }
        check_exponent(k, &pspec, &q)
    }

    fn validate_ksz(&self) -> Result<()> {
        self.validate_shape()?;
        if self.field() == ScalarField::Complex {
            return Err(Error::Unsupported(
                "random sign probes are real only (the ±1 construction)".into(),
            ));
        }
        self.validate_list()?;
        if self.draws() == 0 {
            return Err(Error::arg("draws must be at least 1"));
        }
        let q = self.q()?;
        if q.len() != self.k() {
            return Err(Error::arg(format!("q has {} entries but k = {}", q.len(), self.k())));
        }
        Ok(())
    }

    fn validate_zalduendo(&self) -> Result<()> {
        let (pspec, _) = self.validate_shape()?;
        let inv = pspec.inv_sum();
        if !inv.lt(Frac::ONE) {
            return Err(Error::hypothesis(format!(
                "|1/p| = {inv} violates |1/p| < 1 (the diagonal forms need a summable norm)"
            )));
        }
        if self.q.is_none() && self.s.is_none() {
            return Err(Error::arg("the diagonal probe needs an exponent s"));
        }
        if self.beta.is_none() {
            let s = self.q()?.get(0).value();
            crate::extremal::zalduendo_beta(s, &pspec)?;
        }
        let ns = self.n_list();
        if ns.len() < 3 {
            return Err(Error::arg("a probe needs at least three values of N"));
        }
        Ok(())
    }

    fn validate_list(&self) -> Result<()> {
        let mut ns = self.n_list();
        ns.sort_unstable();
        ns.dedup();
        if ns.len() < 3 {
            return Err(Error::arg("a probe needs at least three distinct values of N"));
        }
        for &n in &ns {
            self.validate_extent(n)?;
        }
        Ok(())
    }
}

/// The summation exponent must be one the inequality covers.
///
/// Below `|1/p| = 1/2` that is an admissible mixed `q` or any flat `s` at
/// least the optimal exponent; in the critical band only flat `s >= ρ`.
pub(crate) fn check_exponent(k: usize, pspec: &PSpec, q: &ExponentVector) -> Result<()> {
    let m = pspec.len();
    let rho = hl_exponent(k, m, pspec)?;
    let flat_ok = q.common().is_some_and(|s| s.recip().le(rho.recip()));
    if flat_ok {
        return Ok(());
    }
    match classify(pspec).regime {
        Regime::SubcriticalHl => {
            if hl_admissible(k, pspec, q)? {
                Ok(())
            } else {
                Err(Error::hypothesis(format!(
                    "q = {q} violates q_j in [(1-|1/p|)^-1, 2] with sum 1/q_j <= (k+1)/2 - |1/p| \
                     (|1/p| = {})",
                    pspec.inv_sum()
                )))
            }
        }
        _ => Err(Error::hypothesis(format!(
            "q = {q} is not a flat exponent >= rho = {rho}; for 1/2 <= |1/p| < 1 only the \
             exponent (1-|1/p|)^-1 is available"
        ))),
    }
}
