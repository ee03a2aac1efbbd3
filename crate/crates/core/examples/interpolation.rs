//! Interpolating the exponents (1, 2, ..., 2) and (2k/(k+1), ...) with
//! weights (2|1/p|, 1 - 2|1/p|) lands on the admissibility boundary.

use multisum::exponent::{Frac, PSpec};
use multisum::theory::{
    bh_partial_admissible, interpolate_exponents, interpolation_endpoints, lambda0, optimality_lower_bounds,
};

fn main() -> multisum::error::Result<()> {
    for p in ["inf,inf", "8,8", "4,4"] {
        let pspec = PSpec::parse(p)?;
        let k = pspec.len();
        let (ends, weights) = interpolation_endpoints(k, &pspec)?;
        let q = interpolate_exponents(&ends, &weights)?;
        let target = Frac::ratio(k as i64 + 1, 2);
        println!(
            "p = {pspec}: q = {q}, lambda0 = {}, Σ1/q = {} (bound {target}), partial-sum admissible {}",
            lambda0(k, &pspec)?,
            q.recip_sum(),
            bh_partial_admissible(k, &q)?
        );
        let lb = optimality_lower_bounds(k, pspec.len(), &pspec)?;
        println!("    lower bounds: random sign {}, diagonal {}, best {}", lb.rho_ksz, lb.rho_diag, lb.s);
    }
    Ok(())
}
