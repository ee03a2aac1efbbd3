use serde::Serialize;

use crate::error::Result;
use crate::exponent::{Exponent, PSpec};
use crate::form::{PartitionSpec, ScalarField};
use crate::theory::{
    bh_constant_bound, bh_envelope, classify, hl_exponent, unified_constant_bound, FormulaId,
    Regime,
};

use super::config::ExperimentConfig;

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub k: usize,
    pub m: usize,
    pub p: String,
    pub partition: String,
    pub field: ScalarField,
    pub regime: Regime,
    pub rho: f64,
    /// `formula-id=value` for every applicable bound, `;`-separated.
    pub candidates: String,
    pub constant: f64,
    pub formula_id: FormulaId,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantRow {
    pub k: usize,
    pub field: ScalarField,
    pub value: f64,
    pub formula_id: FormulaId,
    pub envelope: f64,
}

pub fn table_row(part: &PartitionSpec, pspec: &PSpec, field: ScalarField) -> Result<TableRow> {
    let (k, m) = (part.k(), part.m());
    let report = unified_constant_bound(part, pspec, field)?;
    let candidates = report
        .candidates
        .iter()
        .map(|c| format!("{}={}", c.formula_id, c.value))
        .collect::<Vec<_>>()
        .join(";");
    Ok(TableRow {
        k,
        m,
        p: pspec.compact(),
        partition: part.compact(),
        field,
        regime: classify(pspec).regime,
        rho: hl_exponent(k, m, pspec)?.value(),
        candidates,
        constant: report.best.value,
        formula_id: report.best.formula_id,
    })
}

/// Uniform exponents sampling each regime: `∞`, `4m`, `2m` and `3m/2`.
fn default_uniform_p(m: usize) -> Vec<Exponent> {
    let m = m as i64;
    [Exponent::INFINITY]
        .into_iter()
        .chain([Exponent::integer(4 * m), Exponent::integer(2 * m), Exponent::ratio(3 * m, 2)]
            .into_iter()
            .filter_map(|p| p.ok()))
        .collect()
}

/// `exponent` subcommand: `ρ` and constants, for the configured `(k, m, p)`
/// or for a grid over `1 <= k <= m <= 4` when none is given.
pub fn run_tables(config: &ExperimentConfig) -> Result<Vec<TableRow>> {
    config.validate()?;
    let fields = match config.field {
        Some(f) => vec![f],
        None => vec![ScalarField::Real, ScalarField::Complex],
    };
    let given = config.m.is_some() || config.p.is_some() || config.partition.is_some();
    let mut rows = Vec::new();
    if given {
        let part = config.partition()?;
        let pspec = config.pspec()?;
        for &f in &fields {
            rows.push(table_row(&part, &pspec, f)?);
        }
        return Ok(rows);
    }
    for m in 1..=4 {
        for p in default_uniform_p(m) {
            let pspec = PSpec::uniform(m, p);
            let ks: Vec<usize> = match config.k {
                Some(k) if k <= m => vec![k],
                Some(_) => continue,
                None => (1..=m).collect(),
            };
            for k in ks {
                for &f in &fields {
                    rows.push(table_row(&PartitionSpec::balanced(m, k)?, &pspec, f)?);
                }
            }
        }
    }
    Ok(rows)
}

/// `constants` subcommand: `B_k` for `k = 1..=k_max` (default 20).
pub fn run_constants(config: &ExperimentConfig) -> Result<Vec<ConstantRow>> {
    config.validate()?;
    let fields = match config.field {
        Some(f) => vec![f],
        None => vec![ScalarField::Real, ScalarField::Complex],
    };
    let k_max = config.k.unwrap_or(20);
    let mut rows = Vec::new();
    for k in 1..=k_max {
        for &field in &fields {
            let b = bh_constant_bound(k, field)?;
            rows.push(ConstantRow {
                k,
                field,
                value: b.value,
                formula_id: b.formula_id,
                envelope: bh_envelope(k, field),
            });
        }
    }
    Ok(rows)
}
