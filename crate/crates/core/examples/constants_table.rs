//! Bohnenblust–Hille constant bounds against their sublinear envelopes,
//! then the unified constants for a few exponent regimes.

use multisum::exponent::PSpec;
use multisum::form::{PartitionSpec, ScalarField};
use multisum::theory::{bh_constant_bound, bh_envelope, hl_exponent, unified_constant_bound};

fn main() -> multisum::error::Result<()> {
    println!("{:>4} {:>10} {:>10} {:>10} {:>10}", "k", "B_k real", "envelope", "B_k cplx", "envelope");
    for k in [1, 2, 3, 5, 10, 13, 14, 20, 50, 100, 200] {
        let r = bh_constant_bound(k, ScalarField::Real)?;
        let c = bh_constant_bound(k, ScalarField::Complex)?;
        println!(
            "{k:>4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            r.value,
            bh_envelope(k, ScalarField::Real),
            c.value,
            bh_envelope(k, ScalarField::Complex)
        );
    }
    println!();
    for (p, ns) in [("inf,inf,inf", vec![1, 1, 1]), ("12,12,12", vec![1, 1, 1]), ("5,5,5", vec![1, 1, 1]), ("6,6,6,6", vec![2, 2])] {
        let pspec = PSpec::parse(p)?;
        let part = PartitionSpec::contiguous(&ns)?;
        let rho = hl_exponent(part.k(), part.m(), &pspec)?;
        let report = unified_constant_bound(&part, &pspec, ScalarField::Real)?;
        println!("p = {pspec}, blocks {ns:?}: rho = {rho}, best {:.6} [{}]", report.best.value, report.best.formula_id);
        for c in &report.candidates {
            println!("    {:<26} {:.6}", c.formula_id.to_string(), c.value);
        }
    }
    Ok(())
}
