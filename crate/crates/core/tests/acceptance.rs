//! Acceptance criteria. Runs every criterion, prints one
//! `criterion N: PASS|FAIL` line each with the measured quantities, and
//! exits nonzero if any failed.

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multisum::exponent::{Exponent, ExponentVector, Frac, PSpec};
use multisum::experiment::{
    records_csv, run_case, run_sweep, ExperimentConfig, ExperimentKind, Outcome, VerifyCase,
};
use multisum::extremal::{
    fit_loglog_slope, ksz_form, lhs_flat, ratio_probe, zalduendo_coefficients, zalduendo_power_sum,
    KszFamily, Verdict,
};
use multisum::form::{MultilinearForm, PartitionSpec, ScalarField};
use multisum::norm::{estimate_norm, upper_bound_diagonal, ExactMode, NormConfig, NormMethod};
use multisum::tensor::Scalar;
use multisum::theory::{
    bh_constant_bound, bh_envelope, classify, hl_exponent, hl_exponent_uniform,
    interpolate_exponents, interpolation_endpoints, unified_constant_bound, Regime,
};

fn report(n: u32, pass: bool, detail: String) -> bool {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn criterion_01_hadamard_fixture() -> bool {
    let start = Instant::now();
    let pspec = PSpec::infinite(2);
    let t = MultilinearForm::real(vec![2, 2], pspec.clone(), &[1.0, 1.0, 1.0, -1.0]).unwrap();
    let part = PartitionSpec::identity(2);
    let lhs = lhs_flat(&t, &part, Exponent::ratio(4, 3).unwrap()).unwrap();
    let norm = estimate_norm(&t, &NormConfig::default()).unwrap();
    let c = unified_constant_bound(&part, &pspec, ScalarField::Real).unwrap().best;
    let ratio = lhs / norm.value;
    let elapsed = start.elapsed();
    let pass = (lhs - 4f64.powf(0.75)).abs() < 1e-9
        && norm.certified
        && norm.value == 2.0
        && (ratio - 2f64.sqrt()).abs() < 1e-9
        && (c.value - 2f64.sqrt()).abs() < 1e-9
        && ratio <= c.value + 1e-9
        && elapsed < Duration::from_millis(1);
    report(
        1,
        pass,
        format!("lhs={lhs:.12} norm={} ratio={ratio:.12} B2={:.12} time={elapsed:?}", norm.value, c.value),
    )
}

fn criterion_02_diagonal_sums() -> bool {
    let start = Instant::now();
    let mut records = Vec::new();
    for m in [2usize, 3] {
        let case = VerifyCase {
            field: ScalarField::Real,
            n: 6,
            pspec: PSpec::infinite(m),
            partition: PartitionSpec::diagonal(m),
            q: ExponentVector::uniform(1, Exponent::ONE),
            trials: 100,
        };
        records.extend(run_case(m, &case, 2024, 32, &format!("ag-m{m}")).unwrap());
    }
    let elapsed = start.elapsed();
    let holds = records.iter().filter(|r| r.holds).count();
    let exact = records.iter().filter(|r| r.norm.certified && r.norm.method == NormMethod::ExactSignEnum).count();
    let unit = records.iter().all(|r| r.constant_bound.value == 1.0);
    let worst = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let pass = records.len() == 200 && holds == 200 && exact == 200 && unit && elapsed < Duration::from_secs(30);
    report(
        2,
        pass,
        format!("{holds}/{} hold, {exact} exact, constant 1: {unit}, max ratio {worst:.6}, time={elapsed:?}", records.len()),
    )
}

fn criterion_03_regime_continuity() -> bool {
    let mut worst_uniform = 0.0f64;
    for m in 1..=6usize {
        let p = (2 * m) as f64;
        for k in 1..=m {
            let kf = k as f64;
            let mf = m as f64;
            let critical = p / (p - mf);
            let sub = 2.0 * kf * p / (kf * p + p - 2.0 * mf);
            worst_uniform = worst_uniform.max((critical - sub).abs());
            let lib = hl_exponent_uniform(k, m, Exponent::integer(2 * m as i64).unwrap()).unwrap();
            worst_uniform = worst_uniform.max((lib.value() - critical).abs());
        }
    }
    // |1/p| = 1/2 - 10^{-i}, split evenly over two slots
    let mut worst_boundary = 0.0f64;
    let mut monotone = true;
    for k in 1..=2usize {
        let mut prev = 0.0;
        for i in 1..=10 {
            let inv = 0.5 - 10f64.powi(-i);
            let kf = k as f64;
            let sub = 2.0 * kf / (kf + 1.0 - 2.0 * inv);
            let crit = 1.0 / (1.0 - inv);
            monotone &= sub > prev;
            prev = sub;
            if i == 10 {
                worst_boundary = worst_boundary.max((sub - 2.0).abs()).max((crit - 2.0).abs());
                let pspec = PSpec::uniform(2, Exponent::from_f64(2.0 / inv).unwrap());
                let lib = hl_exponent(k, 2, &pspec).unwrap().value();
                worst_boundary = worst_boundary.max((lib - 2.0).abs());
            }
        }
        let at = hl_exponent(k, 2, &PSpec::parse("4,4").unwrap()).unwrap();
        worst_boundary = worst_boundary.max((at.value() - 2.0).abs());
    }
    let pass = worst_uniform < 1e-12 && worst_boundary < 1e-9 && monotone;
    report(
        3,
        pass,
        format!("uniform p=2m max gap {worst_uniform:.3e}, boundary gap {worst_boundary:.3e}, monotone {monotone}"),
    )
}

fn criterion_04_interpolation_identity() -> bool {
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=6i64 {
        for s in [Frac::ZERO, Frac::ratio(1, 8), Frac::ratio(1, 4), Frac::ratio(1, 2)] {
            // m = k slots sharing |1/p| evenly
            let p = if s.is_zero() {
                Exponent::INFINITY
            } else {
                Exponent::from_recip(s * Frac::ratio(1, k)).unwrap()
            };
            let pspec = PSpec::uniform(k as usize, p);
            let (ends, weights) = interpolation_endpoints(k as usize, &pspec).unwrap();
            let exact_weights = weights[0].as_exact() == s.as_exact().map(|x| x * 2)
                && weights.iter().all(|w| w.is_exact());
            let q = interpolate_exponents(&ends, &weights).unwrap();
            let sr = s.as_exact().unwrap();
            let lam_recip = Ratio::new(k + 1, 2 * k) + sr * Ratio::new(k - 1, k);
            let rho_recip = Ratio::new(k + 1, 2 * k) - sr / k;
            let first_ok = q.get(0).recip().as_exact() == Some(lam_recip);
            let rest_ok = (1..k as usize).all(|j| q.get(j).recip().as_exact() == Some(rho_recip));
            let sum_ok = q.recip_sum().as_exact() == Some(Ratio::new(k + 1, 2));
            checked += 1;
            if !(exact_weights && first_ok && rest_ok && sum_ok) {
                failures.push(format!("k={k} |1/p|={s}: q={q}"));
            }
        }
    }
    report(4, failures.is_empty(), format!("{checked} cases exact, failures {failures:?}"))
}

fn criterion_05_constants() -> bool {
    let b2 = bh_constant_bound(2, ScalarField::Complex).unwrap().value;
    let mut envelope_ok = true;
    let mut worst = String::new();
    for k in 2..=200 {
        for f in [ScalarField::Complex, ScalarField::Real] {
            let b = bh_constant_bound(k, f).unwrap().value;
            if b >= bh_envelope(k, f) {
                envelope_ok = false;
                worst = format!("k={k} {f}: {b} >= {}", bh_envelope(k, f));
            }
        }
    }
    // 2^{H_12 / 2} to 40 digits, H_12 = 86021/27720
    let reference = 2.931_431_487_894_730_069_628_718_155_137_467;
    let r13 = bh_constant_bound(13, ScalarField::Real).unwrap().value;
    let pass = (b2 - 1.128_379_2).abs() < 1e-6 && envelope_ok && (r13 - reference).abs() < 1e-10;
    report(
        5,
        pass,
        format!("B2C={b2:.10} envelopes hold={envelope_ok} {worst} B13R={r13:.15} err={:.2e}", (r13 - reference).abs()),
    )
}

fn criterion_06_ksz_slope() -> bool {
    let start = Instant::now();
    let ns = [4usize, 8, 16, 32, 64];
    let cfg = NormConfig::default();
    let mut pts = Vec::new();
    let mut methods = Vec::new();
    for &n in &ns {
        let (_, est) = ksz_form(ScalarField::Real, 2, n, &PSpec::infinite(2), 0, 8, &cfg).unwrap();
        methods.push(est.certified);
        pts.push((n as f64, est.value));
    }
    let fit = fit_loglog_slope(&pts).unwrap();
    let elapsed = start.elapsed();
    // exact enumeration needs 2^N patterns; the budget 2^22 covers N <= 16
    let exact_where_possible = methods == [true, true, true, false, false];
    let pass = (1.3..=1.7).contains(&fit.slope) && exact_where_possible && elapsed < Duration::from_secs(120);
    report(
        6,
        pass,
        format!("slope {:.4} ± {:.4}, certified {methods:?}, time={elapsed:?}", fit.slope, fit.stderr),
    )
}

fn criterion_07_bh_optimality_probe() -> bool {
    let start = Instant::now();
    let ns = [4usize, 8, 16, 32, 64];
    let family = KszFamily { m: 2, pspec: PSpec::infinite(2), seed: 0, draws: 8 };
    let part = PartitionSpec::identity(2);
    let cfg = NormConfig::default();
    let q1 = ExponentVector::uniform(2, Exponent::ONE);
    let q43 = ExponentVector::uniform(2, Exponent::ratio(4, 3).unwrap());
    let low = ratio_probe(&family, &part, &q1, &ns, &cfg).unwrap();
    let opt = ratio_probe(&family, &part, &q43, &ns, &cfg).unwrap();
    let elapsed = start.elapsed();
    let max_ratio = opt.points.iter().map(|p| p.ratio).fold(0.0, f64::max);
    let low_ok = low.verdict == Verdict::Grows && (0.35..=0.65).contains(&low.slope);
    let opt_ok = opt.verdict == Verdict::Bounded && opt.slope.abs() <= 0.1 && max_ratio <= 2.0;
    let pass = low_ok && opt_ok && elapsed < Duration::from_secs(120);
    report(
        7,
        pass,
        format!(
            "s=1: slope {:.4} ± {:.4} {} [{}]; s=4/3: slope {:.4} ± {:.4} {} max ratio {max_ratio:.4} [{}]; time={elapsed:?}",
            low.slope,
            low.slope_stderr,
            low.verdict,
            if low_ok { "ok" } else { "miss" },
            opt.slope,
            opt.slope_stderr,
            opt.verdict,
            if opt_ok { "ok" } else { "miss" },
        ),
    )
}

fn criterion_08_critical_band_probe() -> bool {
    let beta = -0.55;
    let pspec = PSpec::parse("4,4").unwrap();
    let below = zalduendo_power_sum(1_000_000, beta, 1.8) / zalduendo_power_sum(100, beta, 1.8);
    // analytic: only the coefficient vector is built, never the N×N tensor
    let diag: Vec<Scalar> =
        zalduendo_coefficients(1_000_000, beta).into_iter().map(|c| Scalar::new(c, 0.0)).collect();
    let holder = upper_bound_diagonal(&diag, &pspec).unwrap();
    let above = zalduendo_power_sum(1_000_000, beta, 2.05) / zalduendo_power_sum(10_000, beta, 2.05) - 1.0;
    let grows_ok = below > 2.0 && holder < 3.2;
    let converges_ok = above < 0.01;
    report(
        8,
        grows_ok && converges_ok,
        format!(
            "s=1.8: sum growth x{below:.4} (> 2: {}), Hölder bound {holder:.4} (< 3.2: {}); s=2.05: increment {:.2}% (< 1%: {converges_ok})",
            below > 2.0,
            holder < 3.2,
            100.0 * above
        ),
    )
}

fn sweep_config() -> ExperimentConfig {
    ExperimentConfig { kind: Some(ExperimentKind::Sweep), ..Default::default() }
}

fn criterion_09_random_sweep() -> bool {
    let start = Instant::now();
    let records = run_sweep(&sweep_config()).unwrap();
    let elapsed = start.elapsed();
    let violated = records.iter().filter(|r| r.outcome == Outcome::Violated).count();
    let inconclusive = records.iter().filter(|r| r.outcome == Outcome::Inconclusive).count();
    let regimes: std::collections::BTreeSet<String> =
        records.iter().map(|r| format!("{:?}", classify(&r.pspec).regime)).collect();
    let fields: std::collections::BTreeSet<String> = records.iter().map(|r| r.field.to_string()).collect();
    let spans = regimes.contains(&format!("{:?}", Regime::SubcriticalHl))
        && regimes.contains(&format!("{:?}", Regime::CriticalBand))
        && fields.len() == 2;
    let pass = records.len() == 100
        && violated == 0
        && inconclusive * 20 <= records.len()
        && spans
        && elapsed < Duration::from_secs(300);
    report(
        9,
        pass,
        format!(
            "{} records, {violated} violated, {inconclusive} inconclusive, regimes {regimes:?}, fields {fields:?}, time={elapsed:?}",
            records.len()
        ),
    )
}

fn criterion_10_ascent_quality() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut agree, mut exceed) = (0, 0);
    let total = 50;
    for i in 0..total {
        let t = MultilinearForm::gaussian(ScalarField::Real, vec![3, 3], PSpec::infinite(2), &mut rng).unwrap();
        let exact = estimate_norm(&t, &NormConfig::default().with_exact(ExactMode::Forced)).unwrap();
        let ascent = estimate_norm(
            &t,
            &NormConfig::default().with_exact(ExactMode::Off).with_restarts(32).with_seed(i),
        )
        .unwrap();
        if ascent.value > exact.value + 1e-9 {
            exceed += 1;
        }
        if (exact.value - ascent.value).abs() <= 1e-6 * exact.value {
            agree += 1;
        }
    }
    let pass = agree * 100 >= 95 * total && exceed == 0;
    report(10, pass, format!("agree {agree}/{total}, exceeded exact {exceed} times"))
}

fn criterion_11_determinism() -> bool {
    let a = records_csv(&run_sweep(&sweep_config()).unwrap());
    let b = records_csv(&run_sweep(&sweep_config()).unwrap());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = pool.install(|| records_csv(&run_sweep(&sweep_config()).unwrap()));
    let pass = a == b && a == c;
    report(
        11,
        pass,
        format!("{} bytes; repeat identical {}; single-thread identical {}", a.len(), a == b, a == c),
    )
}

fn main() {
    let criteria: [fn() -> bool; 11] = [
        criterion_01_hadamard_fixture,
        criterion_02_diagonal_sums,
        criterion_03_regime_continuity,
        criterion_04_interpolation_identity,
        criterion_05_constants,
        criterion_06_ksz_slope,
        criterion_07_bh_optimality_probe,
        criterion_08_critical_band_probe,
        criterion_09_random_sweep,
        criterion_10_ascent_quality,
        criterion_11_determinism,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
