//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p plucker-cli --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use plucker_core::batch::map_trials;
use plucker_core::exact::{int, ExactState};
use plucker_core::grassmann::{max_relation_residual, plucker_relation_residuals};
use plucker_core::harness::{
    run_invariance, run_monotonicity, InvarianceConfig, MonotonicityConfig,
};
use plucker_core::oracles::{exact_hyperdet, exact_hyperdet_identity, two_qubit_concurrence};
use plucker_core::slocc::{monotonicity_trial, random_unitary_matrix, KrausPair};
use plucker_core::{
    bipartition_matrix, hyperdet_222, hyperdet_via_diophantine, hyperdet_via_levay,
    partial_monotone, plucker_coordinates, rng, separability_witness, three_tangle, total_monotone,
    Complex64, NamedState, PureState,
};
use std::time::{Duration, Instant};

fn verdict(id: u32, name: &str, passed: bool, detail: String) {
    println!(
        "[{}] AC{id:02} {name}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "AC{id:02} {name}: {detail}");
}

fn compute_total(args: &[&str]) -> (f64, Duration) {
    let start = Instant::now();
    let out = plucker_cli::run(args.iter().copied());
    let elapsed = start.elapsed();
    assert_eq!(out.code, 0, "{}", out.stderr);
    let json: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    (json["monotone"]["total"].as_f64().unwrap(), elapsed)
}

#[test]
fn ac01_w_state_value() {
    const EXPECTED: f64 = 0.816496580927726;
    let base = [
        "plucker",
        "compute",
        "--named",
        "W",
        "--qubits",
        "3",
        "--normalization",
    ];
    let (e1, t1) = compute_total(&[&base[..], &["1"]].concat());
    let scaled: Vec<(f64, f64)> = [0.5, 2.0, 7.25]
        .iter()
        .map(|&n| {
            let arg = n.to_string();
            (n, compute_total(&[&base[..], &[arg.as_str()]].concat()).0)
        })
        .collect();
    let scale_err = scaled
        .iter()
        .map(|&(n, e)| (e - EXPECTED * f64::sqrt(n)).abs())
        .fold(0.0f64, f64::max);

    let bin = std::process::Command::new(env!("CARGO_BIN_EXE_plucker"))
        .args([
            "compute",
            "--named",
            "W",
            "--qubits",
            "3",
            "--normalization",
            "1",
        ])
        .output()
        .unwrap();
    let bin_total = serde_json::from_slice::<serde_json::Value>(&bin.stdout).unwrap()["monotone"]
        ["total"]
        .as_f64()
        .unwrap();

    let passed = (e1 - EXPECTED).abs() < 1e-12
        && scale_err < 1e-12
        && t1 < Duration::from_millis(10)
        && bin.status.code() == Some(0)
        && (bin_total - EXPECTED).abs() < 1e-12;
    verdict(
        1,
        "W-state monotone",
        passed,
        format!(
            "E = {e1:.15}, |ΔE| = {:.1e}, √N scaling err {scale_err:.1e}, runtime {t1:?}",
            (e1 - EXPECTED).abs()
        ),
    );
}

#[test]
fn ac02_explicit_minor_formulas() {
    let mut worst = 0.0f64;
    for seed in 0..20 {
        let s = PureState::haar_random(3, seed).unwrap();
        let a = |i: u8, j: u8, k: u8| s.amplitude(&[i, j, k]).unwrap();
        let printed = [
            ((1, 2), a(1, 1, 1) * a(2, 1, 2) - a(1, 1, 2) * a(2, 1, 1)),
            ((1, 3), a(1, 1, 1) * a(2, 2, 1) - a(1, 2, 1) * a(2, 1, 1)),
            ((1, 4), a(1, 1, 1) * a(2, 2, 2) - a(1, 2, 2) * a(2, 1, 1)),
            ((2, 3), a(1, 1, 2) * a(2, 2, 1) - a(1, 2, 1) * a(2, 1, 2)),
            ((2, 4), a(1, 1, 2) * a(2, 2, 2) - a(1, 2, 2) * a(2, 1, 2)),
            ((3, 4), a(1, 2, 1) * a(2, 2, 2) - a(1, 2, 2) * a(2, 2, 1)),
        ];
        let pset = plucker_coordinates(&bipartition_matrix(&s, 1).unwrap()).unwrap();
        assert_eq!(pset.len(), 6);
        for ((c1, c2), want) in printed {
            worst = worst.max((pset.get(c1, c2).unwrap() - want).norm());
        }
    }
    verdict(
        2,
        "explicit P^1 minors",
        worst < 1e-14,
        format!("max deviation {worst:.1e} over 20 states"),
    );
}

#[test]
fn ac03_plucker_relation_residuals() {
    let start = Instant::now();
    let mut per_m = Vec::new();
    for m in 3..=6usize {
        let worst = map_trials(1000, |i| {
            let s = PureState::haar_random_with(m, &mut rng::stream(3_000 + m as u64, i)).unwrap();
            (1..=m)
                .map(|j| {
                    let pset = plucker_coordinates(&bipartition_matrix(&s, j).unwrap()).unwrap();
                    if m <= 4 {
                        plucker_relation_residuals(&pset)
                            .iter()
                            .map(|r| r.residual.norm())
                            .fold(0.0f64, f64::max)
                    } else {
                        max_relation_residual(&pset)
                    }
                })
                .fold(0.0f64, f64::max)
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        per_m.push((m, worst));
    }
    let elapsed = start.elapsed();
    let worst = per_m.iter().map(|p| p.1).fold(0.0f64, f64::max);
    verdict(
        3,
        "Plücker relations",
        worst < 1e-12 && elapsed < Duration::from_secs(30),
        format!("max |residual| per m {per_m:?}, runtime {elapsed:?}"),
    );
}

#[test]
fn ac04_cauchy_binet_oracle() {
    let mut worst = 0.0f64;
    for m in 2..=6usize {
        let w = map_trials(1000, |i| {
            let s = PureState::haar_random_with(m, &mut rng::stream(4_000 + m as u64, i)).unwrap();
            (1..=m)
                .map(|j| {
                    let e = partial_monotone(
                        &plucker_coordinates(&bipartition_matrix(&s, j).unwrap()).unwrap(),
                    );
                    let det = s.reduced_density(&[j]).unwrap().determinant();
                    (e - det.re).abs().max(det.im.abs())
                })
                .fold(0.0f64, f64::max)
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        worst = worst.max(w);
    }
    verdict(
        4,
        "E_j = det ρ_j",
        worst < 1e-12,
        format!("max deviation {worst:.1e}, m = 2..6, 1000 states each"),
    );
}

#[test]
fn ac05_hyperdet_triple_agreement() {
    let worst = map_trials(1000, |i| {
        let s = PureState::haar_random_with(3, &mut rng::stream(5_000, i)).unwrap();
        let d9 = hyperdet_222(&s).unwrap();
        let d11 = hyperdet_via_diophantine(&s).unwrap();
        let dl = hyperdet_via_levay(&s).unwrap();
        [(d9 - d11).norm(), (d9 - dl).norm(), (d11 - dl).norm()]
            .into_iter()
            .fold(0.0f64, f64::max)
    })
    .into_iter()
    .fold(0.0f64, f64::max);
    let exact_ok = (0..200u64)
        .filter(|&i| {
            let s = ExactState::random_small(3, &mut rng::stream(5_001, i)).unwrap();
            exact_hyperdet_identity(&s).unwrap()
        })
        .count();
    verdict(
        5,
        "hyperdeterminant routes",
        worst < 1e-12 && exact_ok == 200,
        format!("max pairwise float deviation {worst:.1e}; exact identity {exact_ok}/200"),
    );
}

#[test]
fn ac06_known_hyperdet_values() {
    let ghz = PureState::named(NamedState::Ghz, 3).unwrap();
    let w = PureState::named(NamedState::W, 3).unwrap();
    let g_det = hyperdet_222(&ghz).unwrap();
    let w_det = hyperdet_222(&w).unwrap();
    let (g_t, w_t) = (three_tangle(&ghz).unwrap(), three_tangle(&w).unwrap());

    // exact reference: unnormalized GHZ has Det = 1, so Det/|√2|⁴ = 1/4; W has Det = 0
    let mut g_exact = vec![int(0, 0); 8];
    g_exact[0] = int(1, 0);
    g_exact[7] = int(1, 0);
    let g_exact = exact_hyperdet(&ExactState::new(3, g_exact).unwrap()).unwrap();
    let mut w_exact = vec![int(0, 0); 8];
    for k in [1, 2, 4] {
        w_exact[k] = int(1, 0);
    }
    let w_exact = exact_hyperdet(&ExactState::new(3, w_exact).unwrap()).unwrap();
    let exact_ok = g_exact == int(1, 0) && w_exact == int(0, 0);

    let passed = exact_ok
        && (g_det - Complex64::new(0.25, 0.0)).norm() < 1e-13
        && (g_t - 1.0).abs() < 1e-13
        && w_det.norm() < 1e-13
        && w_t.abs() < 1e-13;
    verdict(
        6,
        "GHZ/W hyperdeterminant",
        passed,
        format!("GHZ Det {g_det}, τ {g_t}; W Det {w_det}, τ {w_t}; exact oracle {exact_ok}"),
    );
}

#[test]
fn ac07_invariance_suite() {
    let mut lu = 0.0f64;
    let mut pl = 0.0f64;
    let mut det = 0.0f64;
    for m in 2..=5usize {
        let rep = run_invariance(&InvarianceConfig::new(m, 1000, 70 + m as u64)).unwrap();
        lu = lu.max(rep.summary.local_unitary.max);
        pl = pl
            .max(rep.summary.sl2_plucker.max)
            .max(rep.summary.sl2_partial.max);
        if let Some(q) = rep.summary.sl2_hyperdet {
            det = det.max(q.max);
        }
    }
    verdict(
        7,
        "LU / SL(2,C) invariance",
        lu < 1e-10 && pl < 1e-10 && det < 1e-9,
        format!("LU max {lu:.1e}; SL-cut Plücker/E_j max {pl:.1e}; SL⊗3 |Det| max {det:.1e} (1000 trials per m = 2..5)"),
    );
}

#[test]
fn ac08_separability_witness() {
    let mut r = rng::from_seed(8);
    let mut product_ok = true;
    let mut worst_e = 0.0f64;
    for _ in 0..100 {
        let f: Vec<[Complex64; 2]> = (0..3)
            .map(|_| [rng::complex_gaussian(&mut r), rng::complex_gaussian(&mut r)])
            .collect();
        let s = PureState::product(&f).unwrap();
        let e = total_monotone(&s, 1.0).unwrap().total;
        worst_e = worst_e.max(e);
        product_ok &= e < 1e-12 && (1..=3).all(|j| separability_witness(&s, j, 1e-10).unwrap());
    }
    let mut entangled = 0;
    let mut detected = 0;
    while entangled < 100 {
        let s = PureState::haar_random_with(3, &mut r).unwrap();
        if total_monotone(&s, 1.0).unwrap().total <= 0.1 {
            continue;
        }
        entangled += 1;
        if (1..=3).any(|j| !separability_witness(&s, j, 1e-10).unwrap()) {
            detected += 1;
        }
    }
    verdict(
        8,
        "separability witness",
        product_ok && detected == 100,
        format!("product max E {worst_e:.1e}; entangled detected {detected}/100"),
    );
}

#[test]
fn ac09_monotonicity_harness() {
    let rep = run_monotonicity(&MonotonicityConfig {
        num_qubits: 3,
        trials: 10_000,
        seed: 9,
        normalization: 1.0,
    })
    .unwrap();
    let json = plucker_core::io::to_json(&rep);
    let reparsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let has_quantiles = reparsed["violation"]["p99"].is_number();

    let mut r = rng::from_seed(99);
    let mut unitary_worst = 0.0f64;
    for t in 0..200 {
        let s = PureState::haar_random_with(3, &mut r).unwrap();
        let pair = KrausPair::unitary_mixture(
            1 + t % 3,
            random_unitary_matrix(&mut r),
            random_unitary_matrix(&mut r),
        )
        .unwrap();
        unitary_worst = unitary_worst.max(monotonicity_trial(&s, &pair, 1.0).unwrap().violation);
    }
    let ghz = rep.controls.ghz_projective;
    let passed = rep.records.len() == 10_000
        && has_quantiles
        && unitary_worst < 1e-10
        && rep.controls.unitary_pair_max_violation < 1e-10
        && ghz.expected_e_after == 0.0
        && ghz.e_before > 0.0;
    verdict(
        9,
        "LOCC monotonicity harness",
        passed,
        format!(
            "violation p50 {:.1e} p99 {:.1e} max {:.1e}, violating {}/10000; unitary-pair max {:.1e}; GHZ E {:.5} → {}",
            rep.violation.p50,
            rep.violation.p99,
            rep.violation.max,
            rep.violating_trials,
            unitary_worst.max(rep.controls.unitary_pair_max_violation),
            ghz.e_before,
            ghz.expected_e_after
        ),
    );
}

#[test]
fn ac10_two_qubit_bridge() {
    let mut stated = 0.0f64;
    let mut squared = 0.0f64;
    for seed in 0..100 {
        let s = PureState::haar_random(2, 10_000 + seed).unwrap();
        let e = total_monotone(&s, 1.0).unwrap().total;
        let c = two_qubit_concurrence(&s).unwrap();
        stated = stated.max((e * e - 2.0 * (c / 2.0).powi(4)).abs());
        squared = squared.max((e * e - 2.0 * (c / 2.0).powi(2)).abs());
    }
    verdict(
        10,
        "two-qubit bridge E² = 2·(C/2)⁴",
        stated < 1e-12,
        format!(
            "max |E² − 2(C/2)⁴| = {stated:.3e}; for reference max |E² − 2(C/2)²| = {squared:.1e}"
        ),
    );
}
