//! The 2×2 Hadamard form is extremal for the Littlewood 4/3 inequality:
//! its ratio equals the real constant √2 exactly.

use multisum::exponent::{Exponent, PSpec};
use multisum::extremal::lhs_flat;
use multisum::form::{MultilinearForm, PartitionSpec, ScalarField};
use multisum::norm::{estimate_norm, NormConfig};
use multisum::theory::unified_constant_bound;

fn main() -> multisum::error::Result<()> {
    let pspec = PSpec::infinite(2);
    let t = MultilinearForm::real(vec![2, 2], pspec.clone(), &[1.0, 1.0, 1.0, -1.0])?;
    let part = PartitionSpec::identity(2);
    let lhs = lhs_flat(&t, &part, Exponent::ratio(4, 3)?)?;
    let norm = estimate_norm(&t, &NormConfig::default())?;
    let c = unified_constant_bound(&part, &pspec, ScalarField::Real)?.best;
    println!("lhs   = {lhs:.15}  (4^(3/4) = {:.15})", 4f64.powf(0.75));
    println!("norm  = {} via {} (certified: {})", norm.value, norm.method, norm.certified);
    println!("ratio = {:.15}", lhs / norm.value);
    println!("bound = {:.15} [{}]", c.value, c.formula_id);
    Ok(())
}
