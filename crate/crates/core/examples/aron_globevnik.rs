//! Diagonal sums of random real forms on ℓ_∞: Σ_j |T(e_j, ..., e_j)| never
//! exceeds ‖T‖.

use multisum::exponent::{Exponent, ExponentVector, PSpec};
use multisum::experiment::{run_case, VerifyCase};
use multisum::form::{PartitionSpec, ScalarField};

fn main() -> multisum::error::Result<()> {
    for m in [2, 3] {
        let case = VerifyCase {
            field: ScalarField::Real,
            n: 6,
            pspec: PSpec::infinite(m),
            partition: PartitionSpec::diagonal(m),
            q: ExponentVector::uniform(1, Exponent::ONE),
            trials: 20,
        };
        let records = run_case(m, &case, 0, 32, &format!("ag-m{m}"))?;
        let worst = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let holds = records.iter().filter(|r| r.holds).count();
        let exact = records.iter().filter(|r| r.norm.certified).count();
        println!(
            "m = {m}: {holds}/{} hold, {exact} exact norms, largest ratio {worst:.6} (constant {})",
            records.len(),
            records[0].constant_bound.value
        );
    }
    Ok(())
}
