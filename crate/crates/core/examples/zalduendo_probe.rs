//! Diagonal forms `T(e_j, ..., e_j) = j^β` on ℓ_4 × ℓ_4: below the exponent
//! ρ = 2 the diagonal sums diverge while the norms stay bounded.

use multisum::exponent::{ExponentVector, PSpec};
use multisum::extremal::{
    ratio_probe, zalduendo_beta, zalduendo_coefficients, zalduendo_power_sum, ZalduendoFamily,
    ZalduendoMode,
};
use multisum::form::PartitionSpec;
use multisum::norm::{upper_bound_diagonal, NormConfig};
use multisum::tensor::Scalar;

fn main() -> multisum::error::Result<()> {
    let pspec = PSpec::parse("4,4")?;
    let beta = -0.55;
    println!("beta = {beta}, rho = 2");
    println!("{:>9} {:>14} {:>14} {:>12}", "N", "sum s=1.8", "sum s=2.05", "norm bound");
    for e in 2..=6 {
        let n = 10usize.pow(e);
        let diag: Vec<Scalar> = zalduendo_coefficients(n, beta)
            .into_iter()
            .map(|c| Scalar::new(c, 0.0))
            .collect();
        println!(
            "{n:>9} {:>14.6} {:>14.6} {:>12.6}",
            zalduendo_power_sum(n, beta, 1.8),
            zalduendo_power_sum(n, beta, 2.05),
            upper_bound_diagonal(&diag, &pspec)?
        );
    }

    let part = PartitionSpec::diagonal(2);
    let ns: Vec<usize> = (2..=6).map(|e| 10usize.pow(e)).collect();
    for s in [1.0, 1.5, 1.8] {
        let family = ZalduendoFamily {
            m: 2,
            pspec: pspec.clone(),
            beta: zalduendo_beta(s, &pspec)?,
            mode: ZalduendoMode::Analytic,
        };
        let q = ExponentVector::parse(&s.to_string())?;
        let probe = ratio_probe(&family, &part, &q, &ns, &NormConfig::default())?;
        println!(
            "s = {s}: beta = {:.4}, ratio slope {:.4} ± {:.4} -> {}",
            family.beta, probe.slope, probe.slope_stderr, probe.verdict
        );
    }
    let fixed = ZalduendoFamily { m: 2, pspec: pspec.clone(), beta, mode: ZalduendoMode::Analytic };
    let q = ExponentVector::parse("1.8")?;
    let probe = ratio_probe(&fixed, &part, &q, &ns, &NormConfig::default())?;
    println!(
        "s = 1.8 at beta = {beta}: ratio slope {:.4} ± {:.4} -> {}",
        probe.slope, probe.slope_stderr, probe.verdict
    );
    Ok(())
}
