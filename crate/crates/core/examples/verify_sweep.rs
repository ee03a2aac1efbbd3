//! The default verification suite, summarized per case.

use multisum::experiment::{default_suite, run_sweep, ExperimentConfig, ExperimentKind, Outcome};

fn main() -> multisum::error::Result<()> {
    let cfg = ExperimentConfig { kind: Some(ExperimentKind::Sweep), ..Default::default() };
    let records = run_sweep(&cfg)?;
    let suite = default_suite()?;
    let mut start = 0;
    for (i, case) in suite.iter().enumerate() {
        let rs = &records[start..start + case.trials];
        start += case.trials;
        let worst = rs.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let exact = rs.iter().filter(|r| r.norm.certified).count();
        println!(
            "c{i:02} {:<7} p={:<14} blocks={:<6} q={:<12} exact {exact}/{} max ratio {worst:.4} <= {:.4} [{}]",
            case.field.to_string(),
            case.pspec.to_string(),
            case.partition.to_string(),
            case.q.to_string(),
            rs.len(),
            rs[0].constant_bound.value,
            rs[0].constant_bound.formula_id
        );
    }
    let bad = records.iter().filter(|r| r.outcome != Outcome::Holds).count();
    println!("{} records, {bad} not holding", records.len());
    Ok(())
}
