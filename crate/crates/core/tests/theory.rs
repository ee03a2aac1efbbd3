use std::f64::consts::{PI, SQRT_2};

use proptest::prelude::*;

use multisum::exponent::{Exponent, ExponentVector, Frac, PSpec};
use multisum::form::{PartitionSpec, ScalarField};
use multisum::special::{gamma, ln_gamma};
use multisum::theory::{
    bh_constant_bound, bh_envelope, bh_partial_admissible, classify, hl_admissible, hl_exponent,
    hl_exponent_uniform, interpolate_exponents, ksz_alpha, ksz_norm_exponent, lambda0,
    optimality_lower_bounds, unified_constant_bound, FormulaId, Regime,
};

fn ps(s: &str) -> PSpec {
    PSpec::parse(s).unwrap()
}

fn ev(s: &str) -> ExponentVector {
    ExponentVector::parse(s).unwrap()
}

fn e(s: &str) -> Exponent {
    s.parse().unwrap()
}

fn exact(x: Frac) -> (i64, i64) {
    let r = x.as_exact().expect("exact");
    (*r.numer(), *r.denom())
}

#[test]
fn hl_exponent_examples() {
    assert_eq!(exact(hl_exponent(2, 2, &ps("inf,inf")).unwrap().recip()), (3, 4));
    assert_eq!(exact(hl_exponent(1, 2, &ps("4,4")).unwrap().recip()), (1, 2));
    assert_eq!(exact(hl_exponent(2, 2, &ps("8,8")).unwrap().recip()), (5, 8));
    assert_eq!(exact(hl_exponent_uniform(2, 2, e("8")).unwrap().recip()), (5, 8));
    assert!(hl_exponent(2, 2, &ps("2,2")).is_err());
    assert!(hl_exponent(3, 2, &ps("inf,inf")).is_err());
}

#[test]
fn admissibility_examples() {
    assert!(bh_partial_admissible(2, &ev("4/3,4/3")).unwrap());
    assert!(!bh_partial_admissible(2, &ev("1,1")).unwrap());
    assert!(bh_partial_admissible(2, &ev("8/7,8/5")).unwrap());
    assert!(bh_partial_admissible(2, &ev("3,2")).is_err());

    assert!(hl_admissible(2, &ps("4,4"), &ev("2,2")).unwrap());
    assert!(hl_admissible(2, &ps("inf,inf"), &ev("4/3,4/3")).unwrap());
    assert!(!hl_admissible(2, &ps("4,4"), &ev("1.9,1.9")).unwrap());
    assert!(hl_admissible(2, &ps("3,3"), &ev("2,2")).is_err());
}

#[test]
fn interpolation_examples() {
    let q = ev("4/3,2,inf");
    assert_eq!(interpolate_exponents(&[q.clone()], &[Frac::ONE]).unwrap().compact(), q.compact());
    let half = Frac::ratio(1, 2);
    let r = interpolate_exponents(&[ev("1,2"), ev("4/3,4/3")], &[half, half]).unwrap();
    assert_eq!(r.compact(), "8/7;8/5");
    let quarter = ps("8,8");
    assert_eq!(r.get(0).recip().as_exact(), lambda0(2, &quarter).unwrap().recip().as_exact());
    assert_eq!(r.get(1).recip().as_exact(), hl_exponent(2, 2, &quarter).unwrap().recip().as_exact());
    assert!(interpolate_exponents(&[ev("1,2"), ev("2,2")], &[half, Frac::ratio(1, 3)]).is_err());
    assert!(interpolate_exponents(&[ev("1,2"), ev("2")], &[half, half]).is_err());
}

#[test]
fn interpolation_is_linear_in_reciprocals() {
    for k in 1..=6usize {
        for s in [Frac::ZERO, Frac::ratio(1, 8), Frac::ratio(1, 4), Frac::ratio(1, 2)] {
            let theta = Frac::int(2) * s;
            let mut first = vec![e("2"); k];
            first[0] = Exponent::ONE;
            let a = ExponentVector::new(first).unwrap();
            let b = ExponentVector::uniform(k, Exponent::ratio(2 * k as i64, k as i64 + 1).unwrap());
            let q = interpolate_exponents(&[a.clone(), b.clone()], &[theta, Frac::ONE - theta]).unwrap();
            let expect = theta * a.recip_sum() + (Frac::ONE - theta) * b.recip_sum();
            assert_eq!(q.recip_sum().as_exact(), expect.as_exact());
            assert_eq!(exact(q.recip_sum()), exact(Frac::ratio(k as i64 + 1, 2)));
        }
    }
}

#[test]
fn bh_constant_examples() {
    for f in [ScalarField::Real, ScalarField::Complex] {
        let b = bh_constant_bound(1, f).unwrap();
        assert_eq!((b.value, b.formula_id), (1.0, FormulaId::BhOne));
    }
    assert!((bh_constant_bound(2, ScalarField::Complex).unwrap().value - 2.0 / PI.sqrt()).abs() < 1e-14);
    let h12: f64 = (1..=12).map(|j| 1.0 / j as f64).sum();
    assert!((bh_constant_bound(13, ScalarField::Real).unwrap().value - SQRT_2.powf(h12)).abs() < 1e-13);
    assert!(bh_constant_bound(0, ScalarField::Real).is_err());
}

#[test]
fn complex_constants_increase_under_envelope() {
    let mut prev = 1.0;
    for k in 2..=200 {
        let b = bh_constant_bound(k, ScalarField::Complex).unwrap().value;
        assert!(b > prev && b < bh_envelope(k, ScalarField::Complex), "k={k}");
        let r = bh_constant_bound(k, ScalarField::Real).unwrap().value;
        assert!(r < bh_envelope(k, ScalarField::Real), "k={k}");
        prev = b;
    }
}

#[test]
fn unified_constant_examples() {
    for (m, p) in [(1, "inf"), (2, "4,4"), (3, "9,9,9"), (3, "inf,2,inf")] {
        let r = unified_constant_bound(&PartitionSpec::diagonal(m), &ps(p), ScalarField::Real).unwrap();
        assert_eq!(r.best.value, 1.0, "p={p}");
    }
    let r = unified_constant_bound(&PartitionSpec::identity(2), &ps("inf,inf"), ScalarField::Real).unwrap();
    assert!((r.best.value - SQRT_2).abs() < 1e-15);
    let r = unified_constant_bound(&PartitionSpec::identity(3), &ps("5,5,5"), ScalarField::Complex).unwrap();
    assert!((r.best.value - 4.0 / PI).abs() < 1e-14);
    assert!(unified_constant_bound(&PartitionSpec::identity(2), &ps("3/2,3"), ScalarField::Real).is_err());
}

#[test]
fn uniform_table_matches_general_formula() {
    // (√2)^{2m(k-1)/p} = (√2)^{2(k-1)|1/p|}
    for m in 1..=5usize {
        for p in [2 * m + 1, 3 * m, 4 * m, 10 * m] {
            let pspec = PSpec::uniform(m, Exponent::integer(p as i64).unwrap());
            let table = Frac::ratio(2 * m as i64, p as i64);
            let general = Frac::int(2) * pspec.inv_sum();
            assert_eq!(table.as_exact(), general.as_exact());
            for k in 1..=m {
                let r = unified_constant_bound(&PartitionSpec::balanced(m, k).unwrap(), &pspec, ScalarField::Real)
                    .unwrap();
                let sub = r.candidates.iter().find(|c| c.formula_id == FormulaId::SubcriticalInterpolated);
                if let Some(c) = sub {
                    let bk = bh_constant_bound(k, ScalarField::Real).unwrap().value;
                    let t = table.to_f64();
                    let want = SQRT_2.powf((k as f64 - 1.0) * t) * bk.powf(1.0 - t);
                    assert!((c.value - want).abs() < 1e-13 * want);
                }
            }
        }
    }
}

#[test]
fn unified_at_least_one() {
    for m in 1..=5usize {
        for p in ["inf", "12", "7", "5", "3"] {
            let pspec = PSpec::uniform(m, e(p));
            if !pspec.inv_sum().lt(Frac::ONE) {
                continue;
            }
            for k in 1..=m {
                for f in [ScalarField::Real, ScalarField::Complex] {
                    let r = unified_constant_bound(&PartitionSpec::balanced(m, k).unwrap(), &pspec, f).unwrap();
                    assert!(r.best.value >= 1.0);
                    assert!(r.candidates.iter().all(|c| c.value >= 1.0 && c.value >= r.best.value));
                    if k == 1 {
                        assert_eq!(r.best.value, 1.0);
                    }
                }
            }
        }
    }
}

#[test]
fn regimes() {
    assert_eq!(classify(&ps("inf,8")).regime, Regime::SubcriticalHl);
    assert_eq!(classify(&ps("4,4")).regime, Regime::CriticalBand);
    assert_eq!(classify(&ps("3,3,3")).regime, Regime::OutOfScope);
}

#[test]
fn ksz_examples() {
    assert_eq!(exact(ksz_alpha(e("2"))), (0, 1));
    assert_eq!(exact(ksz_alpha(Exponent::INFINITY)), (1, 2));
    assert_eq!(exact(ksz_alpha(e("4/3"))), (0, 1));
    assert_eq!(exact(ksz_norm_exponent(&ps("inf,inf"))), (3, 2));
    assert_eq!(exact(ksz_norm_exponent(&ps("2,2"))), (1, 2));
    assert_eq!(exact(ksz_norm_exponent(&ps("4,inf,inf"))), (7, 4));
    // all p_j >= 2: (m+1)/2 - |1/p|
    let p = ps("3,7,inf");
    let simple = Frac::int(2) - p.inv_sum();
    assert_eq!(ksz_norm_exponent(&p).as_exact(), simple.as_exact());
}

#[test]
fn lower_bound_examples() {
    let lb = optimality_lower_bounds(3, 3, &ps("inf,inf,inf")).unwrap();
    assert_eq!((exact(lb.rho_ksz), exact(lb.s)), ((3, 2), (3, 2)));
    assert_eq!(exact(lb.rho_diag), (1, 1));
    let lb = optimality_lower_bounds(1, 2, &ps("inf,inf")).unwrap();
    assert_eq!((exact(lb.rho_ksz), exact(lb.rho_diag), exact(lb.s)), ((2, 3), (1, 1), (1, 1)));
    let lb = optimality_lower_bounds(2, 4, &PSpec::infinite(4)).unwrap();
    assert_eq!((exact(lb.threshold), exact(lb.s)), ((5, 2), (1, 1)));
    assert_eq!(exact(hl_exponent(2, 4, &PSpec::infinite(4)).unwrap().recip()), (3, 4));
}

#[test]
fn gamma_reference_values() {
    assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
    assert!((gamma(1.0) - 1.0).abs() < 1e-14);
    assert!((gamma(2.0) - 1.0).abs() < 1e-14);
    assert!((gamma(1.5) - PI.sqrt() / 2.0).abs() < 1e-14);
    // Γ(x + 1) = x Γ(x) across [1, 3]
    for i in 0..=200 {
        let x = 1.0 + i as f64 / 100.0;
        let rel = (gamma(x + 1.0) - x * gamma(x)).abs() / gamma(x + 1.0);
        assert!(rel < 1e-13, "x={x} rel={rel}");
        assert!((ln_gamma(x) - gamma(x).ln()).abs() < 1e-13);
    }
}

proptest! {
    #[test]
    fn boundary_continuity(k in 1usize..3, i in 1i32..12) {
        let inv = 0.5 - 10f64.powi(-i);
        let pspec = PSpec::uniform(2, Exponent::from_f64(2.0 / inv).unwrap());
        let rho = hl_exponent(k, 2, &pspec).unwrap().value();
        prop_assert!(rho < 2.0 && 2.0 - rho < 4.0 * 10f64.powi(-i) + 1e-12);
    }

    #[test]
    fn regime_formulas_agree_at_two_m(m in 1usize..7, k_off in 0usize..6) {
        let k = 1 + k_off % m;
        let p = Exponent::integer(2 * m as i64).unwrap();
        let a = hl_exponent_uniform(k, m, p).unwrap().value();
        let b = hl_exponent(k, m, &PSpec::uniform(m, p)).unwrap().value();
        prop_assert!((a - 2.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
    }
}
