//! Block coefficients T(e_i, e_i, e_j): a 3-linear form seen as a bilinear
//! array through the partition {1,2} {3}, and the partial-sum inequality.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multisum::exponent::{ExponentVector, PSpec};
use multisum::extremal::lhs_for_family;
use multisum::form::{MultilinearForm, PartitionSpec, ScalarField};
use multisum::norm::{estimate_norm, NormConfig};
use multisum::theory::{hl_exponent, unified_constant_bound};

fn main() -> multisum::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pspec = PSpec::infinite(3);
    let t = MultilinearForm::gaussian(ScalarField::Real, vec![3; 3], pspec.clone(), &mut rng)?;
    let part = PartitionSpec::contiguous(&[2, 1])?;
    let blocks = t.block_value_tensor(&part)?;
    println!("block array shape {:?}:", blocks.shape());
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| format!("{:>8.4}", blocks.get(&[i, j]).unwrap().re)).collect();
        println!("  {}", row.join(" "));
    }
    let rho = hl_exponent(part.k(), part.m(), &pspec)?;
    let q = ExponentVector::uniform(part.k(), rho);
    let lhs = lhs_for_family(&t, &part, &q)?;
    let norm = estimate_norm(&t, &NormConfig::default())?;
    let c = unified_constant_bound(&part, &pspec, ScalarField::Real)?.best;
    println!("rho = {rho}: lhs {lhs:.6} <= {:.6} * {:.6} = {:.6}", c.value, norm.value, c.value * norm.value);
    Ok(())
}
