//! Nested mixed norms: the reduction order matters unless every exponent
//! is the same.

use multisum::exponent::ExponentVector;
use multisum::mixed_norm::{flat_lq, mixed_norm};
use multisum::tensor::DenseTensor;

fn main() -> multisum::error::Result<()> {
    let v = DenseTensor::from_real(vec![2, 2], &[1.0, 2.0, 3.0, 4.0])?;
    let vt = DenseTensor::from_real(vec![2, 2], &[1.0, 3.0, 2.0, 4.0])?;
    for q in ["inf,1", "1,inf", "4/3,2", "2,4/3", "4/3,4/3"] {
        let q = ExponentVector::parse(q)?;
        println!("q = {q:<10} ‖v‖ = {:.6}  ‖vᵀ‖ = {:.6}", mixed_norm(&v, &q)?, mixed_norm(&vt, &q)?);
    }
    println!("flat l2 = {:.6}", flat_lq(&v, "2".parse()?));
    Ok(())
}
