//! CSV and JSON rendering. CSV floats carry 17 significant digits; JSON uses
//! shortest round-trip formatting, so parsing either reproduces every value
//! bit for bit.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

use super::config::{ExperimentConfig, OutputFormat};
use super::probe::ProbeReport;
use super::tables::{ConstantRow, TableRow};
use super::verify::VerificationRecord;

pub const RECORD_HEADER: &str =
    "form_id,field,m,k,N,pspec,partition,q,lhs,norm,certified,constant,formula_id,ratio,holds";
pub const PROBE_HEADER: &str = "family,s,N,lhs,norm,certified,ratio";
pub const TABLE_HEADER: &str = "k,m,p,partition,field,regime,rho,candidates,constant,formula_id";
pub const CONSTANT_HEADER: &str = "k,field,value,formula_id,envelope";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn extent(dims: &[usize]) -> String {
    if dims.iter().all(|&d| d == dims[0]) {
        dims[0].to_string()
    } else {
        dims.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
    }
}

pub fn records_csv(records: &[VerificationRecord]) -> String {
    let mut out = String::from(RECORD_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.form_id,
            r.field,
            r.m,
            r.k,
            extent(&r.dims),
            r.pspec.compact(),
            r.partition,
            r.q.compact(),
            num(r.lhs),
            num(r.norm.value),
            r.norm.certified,
            num(r.constant_bound.value),
            r.constant_bound.formula_id,
            num(r.ratio),
            r.holds
        );
    }
    out
}

pub fn probe_csv(report: &ProbeReport) -> String {
    let mut out = String::from(PROBE_HEADER);
    out.push('\n');
    let r = &report.result;
    let s = r.q.compact();
    for p in &r.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.family,
            s,
            p.n,
            num(p.lhs),
            num(p.norm),
            p.certified,
            num(p.ratio)
        );
    }
    out
}

pub fn tables_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.k,
            r.m,
            r.p,
            r.partition,
            r.field,
            r.regime,
            num(r.rho),
            r.candidates,
            num(r.constant),
            r.formula_id
        );
    }
    out
}

pub fn constants_csv(rows: &[ConstantRow]) -> String {
    let mut out = String::from(CONSTANT_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.k,
            r.field,
            num(r.value),
            r.formula_id,
            num(r.envelope)
        );
    }
    out
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Renders `value` as CSV (via `csv`) or JSON.
pub fn render<T: Serialize + ?Sized>(
    value: &T,
    format: OutputFormat,
    csv: impl FnOnce(&T) -> String,
) -> Result<String> {
    match format {
        OutputFormat::Csv => Ok(csv(value)),
        OutputFormat::Json => to_json(value),
    }
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Sidecar path holding the resolved configuration of an output file.
pub fn provenance_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".config.json");
    PathBuf::from(name)
}

pub fn write_provenance(out: &Path, config: &ExperimentConfig) -> Result<()> {
    let path = provenance_path(out);
    write_output(Some(&path), &to_json(config)?)
}
