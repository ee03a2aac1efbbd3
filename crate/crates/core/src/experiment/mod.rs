//! Experiment orchestration behind the `multisum` binary: configuration,
//! verification trials, optimality probes, formula tables and output.

mod config;
mod emit;
mod probe;
mod sweep;
mod tables;
mod verify;

pub use config::{ExperimentConfig, ExperimentKind, OutputFormat};
pub use emit::{
    constants_csv, probe_csv, provenance_path, records_csv, render, tables_csv, to_json,
    write_output, write_provenance, CONSTANT_HEADER, PROBE_HEADER, RECORD_HEADER, TABLE_HEADER,
};
pub use probe::{run_probe, ProbeReport};
pub use sweep::{default_suite, run_sweep};
pub use tables::{run_constants, run_tables, table_row, ConstantRow, TableRow};
pub use verify::{
    run_case, run_verify, verify_form, Outcome, VerificationRecord, VerifyCase, CERTIFIED_TOL,
};

use crate::error::Result;

/// Result of one subcommand, ready to render.
pub enum Output {
    Records(Vec<VerificationRecord>),
    Probe(Box<ProbeReport>),
    Table(Vec<TableRow>),
    Constants(Vec<ConstantRow>),
}

impl Output {
    /// False when a record is violated or a probe contradicts its prediction.
    pub fn ok(&self) -> bool {
        match self {
            Output::Records(rs) => rs.iter().all(|r| r.outcome != Outcome::Violated),
            Output::Probe(p) => p.matches_expectation(),
            Output::Table(_) | Output::Constants(_) => true,
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match self {
            Output::Records(rs) => render(rs.as_slice(), format, records_csv),
            Output::Probe(p) => render(p.as_ref(), format, probe_csv),
            Output::Table(rs) => render(rs.as_slice(), format, tables_csv),
            Output::Constants(rs) => render(rs.as_slice(), format, constants_csv),
        }
    }
}

/// Dispatches on `config.kind`.
pub fn run(config: &ExperimentConfig) -> Result<Output> {
    Ok(match config.kind()? {
        ExperimentKind::Verify => Output::Records(run_verify(config)?),
        ExperimentKind::Sweep => Output::Records(run_sweep(config)?),
        ExperimentKind::KszProbe | ExperimentKind::ZalduendoProbe => {
            Output::Probe(Box::new(run_probe(config)?))
        }
        ExperimentKind::Exponent => Output::Table(run_tables(config)?),
        ExperimentKind::Constants => Output::Constants(run_constants(config)?),
    })
}
