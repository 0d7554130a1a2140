//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p hnl-core --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use hnl_core::discrimination::{random_povm, random_unit_vector};
use hnl_core::steering::primed_reconstruction_residual;
use hnl_core::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// θ grid {0.1, 0.2, …, 1.5}.
fn theta_grid() -> Vec<f64> {
    (1..=15).map(|k| 0.1 * k as f64).collect()
}

/// Finer grid {0.05, …, 1.55} for the algebraic identities.
fn fine_grid() -> Vec<f64> {
    (1..=31).map(|k| 0.05 * k as f64).collect()
}

const ORACLE_GRID: usize = 10_000;
const ORACLE_POVMS: usize = 10_000;
const ORACLE_TOL: f64 = 1e-6;
const EXACT_TOL: f64 = 1e-12;
const SOLVE_TOL: f64 = 1e-10;
const MC_ROUNDS: usize = 100_000;
const RANDOM_DETECTORS: usize = 100;
const PROPERTY_CASES: usize = 1000;
const STEERING_BASES: usize = 100;
const SEED: u64 = 20_061_017;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_pure<R: Rng>(rng: &mut R) -> PureQubit {
    loop {
        let v: [f64; 4] = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-3 && n2 <= 1.0 {
            return pure_from_amplitudes(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
                .unwrap();
        }
    }
}

/// 1. Closed form vs brute-force oracle.
fn bound_vs_oracle() -> Outcome {
    let mut worst_gap: f64 = 0.0;
    let mut worst_violation: f64 = 0.0;
    for theta in theta_grid() {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        let closed = 0.5 * (1.0 - theta.sin());
        let bound = helstrom_bound(g.overlap()).map_err(|e| e.to_string())?;
        check(
            (closed - bound).abs() < EXACT_TOL,
            format!("closed forms disagree at {theta}"),
        )?;
        let r = oracle_min_error(&g, ORACLE_GRID, ORACLE_POVMS, SEED).map_err(|e| e.to_string())?;
        let gap = (r.min_error - closed).abs();
        worst_gap = worst_gap.max(gap);
        check(
            gap < ORACLE_TOL,
            format!("theta {theta}: oracle {} vs {closed}", r.min_error),
        )?;
        for sampled in [Some(r.min_error), Some(r.projective_min), r.povm_min]
            .into_iter()
            .flatten()
        {
            worst_violation = worst_violation.max(bound - sampled);
            check(
                sampled >= bound - EXACT_TOL,
                format!("theta {theta}: detector with error {sampled} beats bound {bound}"),
            )?;
        }
    }
    Ok(format!(
        "max |oracle - closed| = {worst_gap:.2e} (< {ORACLE_TOL:e}); max violation = {worst_violation:.2e}"
    ))
}

/// 2. p(1 − P_E^m) = 1/2.
fn half_success_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for theta in theta_grid().into_iter().chain(fine_grid()) {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        let pe = helstrom_bound(g.overlap()).map_err(|e| e.to_string())?;
        let dev = (g.p() * (1.0 - pe) - 0.5).abs();
        worst = worst.max(dev);
        check(dev < EXACT_TOL, format!("theta {theta}: deviation {dev:e}"))?;
    }
    Ok(format!("max |p(1 - P_E^m) - 1/2| = {worst:.2e}"))
}

/// 3. Both decompositions realize ρ_B.
fn decomposition_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for theta in theta_grid().into_iter().chain(fine_grid()) {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        let rho = reduced_state_bob(&build_psi(&g));
        let p = g.p();
        for parts in [
            [(p, g.alpha()), (1.0 - p, g.delta())],
            [(p, g.beta()), (1.0 - p, g.minus_delta())],
        ] {
            let d = Decomposition::new(&parts).map_err(|e| e.to_string())?;
            let res = decomposition_residual(&rho, &d);
            worst = worst.max(res);
            check(res < EXACT_TOL, format!("theta {theta}: residual {res:e}"))?;
        }
    }
    Ok(format!("max residual = {worst:.2e}"))
}

/// 4. Primed basis is orthonormal and rebuilds ψ.
fn primed_reconstruction() -> Outcome {
    let (mut worst_orth, mut worst_res): (f64, f64) = (0.0, 0.0);
    for theta in theta_grid().into_iter().chain(fine_grid()) {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        let basis = primed_basis(&g).map_err(|e| e.to_string())?;
        let orth = basis.orthonormality_defect();
        let res = primed_reconstruction_residual(&g, &basis);
        worst_orth = worst_orth.max(orth);
        worst_res = worst_res.max(res);
        check(
            orth < SOLVE_TOL,
            format!("theta {theta}: orthonormality defect {orth:e}"),
        )?;
        check(
            res < SOLVE_TOL,
            format!("theta {theta}: reconstruction residual {res:e}"),
        )?;
    }
    Ok(format!(
        "max defect = {worst_orth:.2e}, max residual = {worst_res:.2e}"
    ))
}

/// 5. Exact no-signaling, analytic and Monte Carlo.
fn exact_no_signaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for theta in theta_grid() {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        for _ in 0..RANDOM_DETECTORS {
            let proj =
                ProjectiveDetector::new(random_unit_vector(&mut rng)).map_err(|e| e.to_string())?;
            let povm = random_povm(&mut rng);
            for spec in [DetectorSpec::from(proj), DetectorSpec::from(povm)] {
                let gap = analytic_marginals(&spec, &g)
                    .map_err(|e| e.to_string())?
                    .gap();
                worst = worst.max(gap.abs());
                check(
                    gap.abs() < EXACT_TOL,
                    format!("theta {theta}: gap {gap:e} for {spec:?}"),
                )?;
            }
        }
    }
    let cfg = ProtocolConfig::new(PI / 6.0, DetectorSpec::Optimal, MC_ROUNDS, 1, SEED);
    let report = no_signal_test(&cfg).map_err(|e| e.to_string())?;
    let limit = 4.0 * (0.5 / MC_ROUNDS as f64).sqrt();
    check(
        report.gap.abs() < limit,
        format!("Monte Carlo gap {} exceeds {limit}", report.gap),
    )?;
    check(
        report.verdict == Verdict::NoSignal,
        format!("verdict {} (z = {})", report.verdict, report.z_statistic),
    )?;
    Ok(format!(
        "max analytic |gap| = {worst:.2e}; MC gap = {:.4} (< {limit:.4}), z = {:.2}, verdict {}",
        report.gap, report.z_statistic, report.verdict
    ))
}

/// 6. The optimal detector sits exactly on the no-signaling boundary.
fn boundary_saturation() -> Outcome {
    let mut worst: f64 = 0.0;
    for theta in theta_grid().into_iter().chain(fine_grid()) {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        let m = analytic_marginals(&DetectorSpec::Optimal, &g).map_err(|e| e.to_string())?;
        for v in [m.p0_bit0, m.p0_bit1] {
            worst = worst.max((v - 0.5).abs());
            check(
                (v - 0.5).abs() < EXACT_TOL,
                format!("theta {theta}: marginal {v}"),
            )?;
        }
    }
    Ok(format!("max |P(0 | bit) - 1/2| = {worst:.2e}"))
}

/// 7. A bound-violating detector signals.
fn signaling_reductio() -> Outcome {
    let theta = PI / 6.0;
    let eps = 0.05;
    let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
    let target = 0.5 + g.p() * eps;
    let mut lines = Vec::new();
    // q_other ∈ {0, 0.5, 1}, then the least favourable split response.
    let specs = [
        ("0", DetectorSpec::super_uniform(eps, 0.0)),
        ("0.5", DetectorSpec::super_uniform(eps, 0.5)),
        ("1", DetectorSpec::super_uniform(eps, 1.0)),
        ("worst", DetectorSpec::super_worst_case(eps)),
    ];
    for (q, spec) in specs {
        let m = analytic_marginals(&spec, &g).map_err(|e| e.to_string())?;
        for margin in [m.signal_margin_bit0, m.signal_margin_bit1] {
            check(
                (margin - target).abs() < EXACT_TOL,
                format!("q {q}: margin {margin} vs {target}"),
            )?;
        }
        check(
            m.worst_round_success() > 0.5,
            format!("q {q}: round success {}", m.worst_round_success()),
        )?;

        let cfg = ProtocolConfig::new(theta, spec, MC_ROUNDS, 1, SEED);
        let report = no_signal_test(&cfg).map_err(|e| e.to_string())?;
        check(
            report.verdict == Verdict::Signal && report.z_statistic.abs() > 20.0,
            format!(
                "q {q}: verdict {} with z = {}",
                report.verdict, report.z_statistic
            ),
        )?;

        let cfg = ProtocolConfig::new(theta, spec, 2000, 200, SEED);
        let est = estimate_bob_error(&cfg).map_err(|e| e.to_string())?;
        check(
            est.error_rate <= 0.05,
            format!("q {q}: Bob error {}", est.error_rate),
        )?;
        lines.push(format!(
            "q={q}: |z|={:.1}, err={:.3}",
            report.z_statistic.abs(),
            est.error_rate
        ));
    }
    let worst =
        analytic_marginals(&DetectorSpec::super_worst_case(eps), &g).map_err(|e| e.to_string())?;
    check(
        (worst.gap() - 2.0 * g.p() * eps).abs() < EXACT_TOL,
        format!("worst-case gap {} vs 2p eps", worst.gap()),
    )?;
    Ok(format!("margin = {target:.5}; {}", lines.join("; ")))
}

/// 8. Randomized property suites.
fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xA5A5);
    let (mut rt, mut ov, mut mix, mut st): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);

    for _ in 0..PROPERTY_CASES {
        let q = random_pure(&mut rng);
        let back = pure_from_bloch(&bloch_from_pure(&q)).map_err(|e| e.to_string())?;
        rt = rt.max(back.distance(&q));
    }
    check(rt < EXACT_TOL, format!("round trip error {rt:e}"))?;

    for _ in 0..PROPERTY_CASES {
        let (a, b) = (random_pure(&mut rng), random_pure(&mut rng));
        let via_bloch = 0.5 * (1.0 + a.bloch().dot(&b.bloch()));
        ov = ov.max((overlap(&a, &b) - via_bloch).abs());
    }
    check(ov < EXACT_TOL, format!("overlap identity error {ov:e}"))?;

    for _ in 0..PROPERTY_CASES {
        let k = rng.random_range(2..=4);
        let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let parts: Vec<(f64, PureQubit)> = weights
            .iter()
            .map(|w| (w / total, random_pure(&mut rng)))
            .collect();
        let rho = density_from_mixture(&parts).map_err(|e| e.to_string())?;
        let mut sum = [0.0; 3];
        for (p, q) in &parts {
            let r = q.bloch().to_array();
            for i in 0..3 {
                sum[i] += p * r[i];
            }
        }
        let r = rho.bloch().to_array();
        mix = mix.max((0..3).map(|i| (r[i] - sum[i]).abs()).fold(0.0, f64::max));
    }
    check(mix < EXACT_TOL, format!("mixture additivity error {mix:e}"))?;

    for theta in theta_grid() {
        let g = canonical_geometry(theta).map_err(|e| e.to_string())?;
        let psi = build_psi(&g);
        let rho = reduced_state_bob(&psi);
        for _ in 0..STEERING_BASES {
            let t = rng.random_range(0.0..PI);
            let phi = rng.random_range(0.0..2.0 * PI);
            let ens = steer(&psi, &OrthonormalBasis::from_angles(t, phi));
            st = st.max(ens.mixture().max_abs_diff(&rho));
        }
    }
    check(st < EXACT_TOL, format!("steering mixture error {st:e}"))?;

    Ok(format!(
        "round trip {rt:.1e}, overlap {ov:.1e}, mixture {mix:.1e}, steering {st:.1e} ({PROPERTY_CASES} cases each, {STEERING_BASES} bases x {} thetas)",
        theta_grid().len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 bound closed form vs oracle", bound_vs_oracle),
        ("AC2 p(1 - P_E^m) = 1/2", half_success_identity),
        (
            "AC3 both decompositions realize rho_B",
            decomposition_identity,
        ),
        ("AC4 primed basis reconstruction", primed_reconstruction),
        ("AC5 exact no-signaling", exact_no_signaling),
        ("AC6 boundary saturation", boundary_saturation),
        ("AC7 signaling reductio", signaling_reductio),
        ("AC8 property suites", property_suites),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", t.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why} [{:.2?}]", t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.2?}",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
