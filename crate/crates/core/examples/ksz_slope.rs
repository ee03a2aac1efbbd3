//! Norm growth of best-of-draws random sign bilinear forms on ℓ_∞ × ℓ_∞,
//! and the ratio probe at s = 1 and s = 4/3.

use multisum::exponent::{Exponent, ExponentVector, PSpec};
use multisum::extremal::{fit_loglog_slope, ksz_form, ratio_probe, KszFamily};
use multisum::form::{PartitionSpec, ScalarField};
use multisum::norm::NormConfig;

fn main() -> multisum::error::Result<()> {
    let pspec = PSpec::infinite(2);
    let cfg = NormConfig::default();
    let ns = [4usize, 8, 16, 32, 64];
    let mut pts = Vec::new();
    println!("{:>4} {:>12} {:>10} {:>9}", "N", "norm", "method", "certified");
    for &n in &ns {
        let (_, est) = ksz_form(ScalarField::Real, 2, n, &pspec, 0, 8, &cfg)?;
        println!("{n:>4} {:>12.4} {:>10} {:>9}", est.value, est.method, est.certified);
        pts.push((n as f64, est.value));
    }
    let fit = fit_loglog_slope(&pts)?;
    println!("log norm vs log N slope: {:.4} (stderr {:.4}); random-sign theory 1.5", fit.slope, fit.stderr);

    let family = KszFamily { m: 2, pspec, seed: 0, draws: 8 };
    let part = PartitionSpec::identity(2);
    for s in [Exponent::ONE, Exponent::ratio(4, 3)?] {
        let q = ExponentVector::uniform(2, s);
        let probe = ratio_probe(&family, &part, &q, &ns, &cfg)?;
        let max_ratio = probe.points.iter().map(|p| p.ratio).fold(0.0, f64::max);
        println!(
            "s = {s}: slope {:.4} ± {:.4}, max ratio {:.4} -> {}",
            probe.slope, probe.slope_stderr, max_ratio, probe.verdict
        );
    }
    Ok(())
}
