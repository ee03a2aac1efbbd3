use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use multisum::error::{Error, Result};
use multisum::exponent::{Exponent, ExponentVector, PSpec};
use multisum::experiment::{
    run, write_output, write_provenance, ExperimentConfig, ExperimentKind, OutputFormat,
};
use multisum::form::ScalarField;

#[derive(Parser)]
#[command(name = "multisum", version, about = "Summability inequalities for multilinear forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the inequality on random Gaussian forms or a form file.
    Verify(Flags),
    /// Ratio growth of best-of-draws random sign forms.
    KszProbe(Flags),
    /// Ratio growth of diagonal power forms.
    ZalduendoProbe(Flags),
    /// Bohnenblust–Hille constant bounds.
    Constants(Flags),
    /// Optimal exponents and constants per regime.
    Exponent(Flags),
    /// The default verification suite.
    Sweep(Flags),
}

#[derive(Args, Debug)]
struct Flags {
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Common extent N of every slot.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated extents for probes.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// Comma-separated p_j; "inf" allowed; one value is repeated m times.
    #[arg(long)]
    p: Option<String>,
    /// Comma-separated mixed exponent.
    #[arg(long)]
    q: Option<String>,
    /// Flat exponent.
    #[arg(long)]
    s: Option<String>,
    /// Comma-separated block multiplicities.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    #[arg(long)]
    field: Option<ScalarField>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    draws: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// Diagonal exponent for the diagonal probe.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Form file (JSON) to verify instead of random forms.
    #[arg(long)]
    form: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

impl Flags {
    fn into_config(self, kind: ExperimentKind) -> Result<ExperimentConfig> {
        let flags = ExperimentConfig {
            kind: Some(kind),
            seed: self.seed,
            field: self.field,
            m: self.m,
            k: self.k,
            n: self.n,
            n_list: self.n_list,
            p: self.p.as_deref().map(PSpec::parse).transpose()?,
            q: self.q.as_deref().map(ExponentVector::parse).transpose()?,
            s: self.s.as_deref().map(str::parse::<Exponent>).transpose()?,
            partition: self.partition,
            restarts: self.restarts,
            draws: self.draws,
            trials: self.trials,
            beta: self.beta,
            form: self.form,
            out: self.out,
            format: self.format,
        };
        let base = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if base.kind.is_some_and(|k| k != kind) {
            return Err(Error::Argument(format!(
                "configuration file is for {:?}, subcommand is {kind:?}",
                base.kind.unwrap()
            )));
        }
        Ok(flags.over(&base))
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let (kind, flags) = match cli.command {
        Command::Verify(f) => (ExperimentKind::Verify, f),
        Command::KszProbe(f) => (ExperimentKind::KszProbe, f),
        Command::ZalduendoProbe(f) => (ExperimentKind::ZalduendoProbe, f),
        Command::Constants(f) => (ExperimentKind::Constants, f),
        Command::Exponent(f) => (ExperimentKind::Exponent, f),
        Command::Sweep(f) => (ExperimentKind::Sweep, f),
    };
    let config = flags.into_config(kind)?;
    let output = run(&config)?;
    let text = output.render(config.format())?;
    write_output(config.out.as_deref(), &text)?;
    if let Some(out) = &config.out {
        write_provenance(out, &config.resolved()?)?;
    }
    if let multisum::experiment::Output::Probe(p) = &output {
        eprintln!(
            "slope {:.4} ± {:.4}: {}{}",
            p.result.slope,
            p.result.slope_stderr,
            p.result.verdict,
            p.expected.map_or(String::new(), |e| format!(" (expected {e})"))
        );
    }
    Ok(output.ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("multisum: {e}");
            ExitCode::from(2)
        }
    }
}
