use crate::error::Result;
use crate::exponent::{ExponentVector, PSpec};
use crate::form::{PartitionSpec, ScalarField};
use crate::theory::hl_exponent;

use super::config::ExperimentConfig;
use super::verify::{run_case, VerificationRecord, VerifyCase};

/// `(field, N, p, multiplicities, mixed q)`; flat cases use the optimal exponent.
type CaseSpec = (ScalarField, usize, &'static str, &'static [usize], Option<&'static str>);

const SUITE: &[CaseSpec] = &[
    (ScalarField::Real, 4, "inf,inf", &[1, 1], None),
    (ScalarField::Real, 5, "inf,inf", &[2], None),
    (ScalarField::Real, 3, "inf,inf,inf", &[2, 1], None),
    (ScalarField::Real, 3, "inf,inf,inf", &[1, 1, 1], None),
    (ScalarField::Real, 4, "8,8", &[1, 1], None),
    (ScalarField::Complex, 3, "6,inf", &[1, 1], None),
    (ScalarField::Complex, 3, "8,inf,inf", &[1, 2], None),
    (ScalarField::Real, 4, "4,4", &[1, 1], None),
    (ScalarField::Real, 4, "3,3", &[2], None),
    (ScalarField::Complex, 3, "5,5,5", &[1, 1, 1], None),
    (ScalarField::Real, 3, "6,6,6", &[2, 1], None),
    (ScalarField::Real, 3, "6,6,6,6", &[2, 2], None),
    (ScalarField::Complex, 3, "inf,inf", &[1, 1], None),
    (ScalarField::Real, 4, "8,8", &[1, 1], Some("4/3,2")),
];

/// Trials per case; 100 in total.
fn trials_for(index: usize) -> usize {
    if index < 2 {
        8
    } else {
        7
    }
}

/// The default verification suite: every regime, both fields, partial sums
/// and one mixed exponent.
pub fn default_suite() -> Result<Vec<VerifyCase>> {
    SUITE
        .iter()
        .enumerate()
        .map(|(i, &(field, n, p, ns, q))| {
            let pspec = PSpec::parse(p)?;
            let partition = PartitionSpec::contiguous(ns)?;
            let q = match q {
                Some(q) => ExponentVector::parse(q)?,
                None => ExponentVector::uniform(
                    partition.k(),
                    hl_exponent(partition.k(), partition.m(), &pspec)?,
                ),
            };
            Ok(VerifyCase {
                field,
                n,
                pspec,
                partition,
                q,
                trials: trials_for(i),
            })
        })
        .collect()
}

/// `sweep` subcommand: the default suite, ordered by case then trial.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<VerificationRecord>> {
    config.validate()?;
    let mut out = Vec::new();
    for (i, case) in default_suite()?.iter().enumerate() {
        let case = match config.trials {
            Some(t) => VerifyCase { trials: t, ..case.clone() },
            None => case.clone(),
        };
        out.extend(run_case(i, &case, config.seed(), config.restarts(), &format!("sweep-c{i:02}"))?);
    }
    Ok(out)
}
