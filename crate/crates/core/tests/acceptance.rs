//! Acceptance suite: each test pins one end-to-end criterion at its stated
//! tolerance and prints a one-line verdict. Run with `--nocapture` to see
//! the lines alongside the per-test results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siklos_core::ambient::{AmbientGeometry, DefiningFunction, SpacetimePoint};
use siklos_core::catalog::{catalog_list, ENTRY_NAMES};
use siklos_core::hypersurface::{classify_at, gauss_codazzi_residuals, ClassifyOptions};
use siklos_core::verify::{random_timelike_immersion, run_suite, VerificationConfig, H_PANEL};
use std::time::Instant;

fn geometry(source: &str) -> AmbientGeometry {
    AmbientGeometry::new(1.0, DefiningFunction::parse(source).unwrap()).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng) -> SpacetimePoint {
    SpacetimePoint::new(
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(0.5..3.0),
        rng.random_range(-2.0..2.0),
    )
}

#[test]
fn criterion_1_connection_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for (_, source) in H_PANEL {
        let geo = geometry(source);
        for _ in 0..100 {
            let p = random_point(&mut rng);
            let closed = geo.christoffel_closed(&p).unwrap();
            let koszul = geo.christoffel_koszul(&p).unwrap();
            worst = worst.max(closed.max_abs_diff(&koszul));
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-9 && elapsed.as_secs_f64() < 5.0;
    println!(
        "criterion 1 ({}): connection oracle, worst diff {worst:.3e} (tol 1e-9), {:.2?}",
        if pass { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(worst < 1e-9, "connection oracle diff {worst}");
    assert!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?} over 5 s");
}

#[test]
fn criterion_2_curvature_oracle_and_symmetries() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst_oracle = 0.0f64;
    let mut worst_sym = 0.0f64;
    for (_, source) in H_PANEL {
        let geo = geometry(source);
        for _ in 0..100 {
            let p = random_point(&mut rng);
            let closed = geo.riemann_closed(&p).unwrap();
            let numeric = geo.riemann_from_gamma(&p).unwrap();
            worst_oracle = worst_oracle.max(closed.max_abs_diff(&numeric));
            let metric = geo.metric_at(&p).unwrap();
            worst_sym = worst_sym.max(closed.symmetry_residuals(&metric).worst());
        }
    }
    let elapsed = start.elapsed();
    let pass = worst_oracle < 1e-6 && worst_sym < 1e-9 && elapsed.as_secs_f64() < 30.0;
    println!(
        "criterion 2 ({}): curvature oracle {worst_oracle:.3e} (tol 1e-6), symmetries \
         {worst_sym:.3e} (tol 1e-9), {:.2?}",
        if pass { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(worst_oracle < 1e-6, "curvature oracle diff {worst_oracle}");
    assert!(worst_sym < 1e-9, "symmetry residual {worst_sym}");
    assert!(elapsed.as_secs_f64() < 30.0, "runtime {elapsed:?} over 30 s");
}

#[test]
fn criterion_3_ads_constant_curvature() {
    let beta = 1.0;
    let geo = geometry("0");
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst_sectional = 0.0f64;
    let mut worst_form = 0.0f64;
    for _ in 0..50 {
        let p = random_point(&mut rng);
        let k = geo
            .sectional_curvature(&p, [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0])
            .unwrap();
        worst_sectional = worst_sectional.max((k + 1.0 / (beta * beta)).abs());
        let metric = geo.metric_at(&p).unwrap();
        let r = geo.riemann_from_gamma(&p).unwrap().r;
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for kk in 0..4 {
                        let di = if l == i { 1.0 } else { 0.0 };
                        let dj = if l == j { 1.0 } else { 0.0 };
                        let expected =
                            -(metric.g[j][kk] * di - metric.g[i][kk] * dj) / (beta * beta);
                        worst_form = worst_form.max((r[l][i][j][kk] - expected).abs());
                    }
                }
            }
        }
    }
    let pass = worst_sectional < 1e-10 && worst_form < 1e-6;
    println!(
        "criterion 3 ({}): sectional {worst_sectional:.3e} (tol 1e-10), curvature form \
         {worst_form:.3e} (tol 1e-6)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(worst_sectional < 1e-10);
    assert!(worst_form < 1e-6);
}

#[test]
fn criterion_4_predicates() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    // Kaigorodov-type exponent: Einstein everywhere
    let kaigorodov = geometry("x3^3");
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = random_point(&mut rng);
        let v = kaigorodov.predicates(&p, 1e-8).unwrap();
        assert!(v.einstein);
        worst = worst.max(v.einstein_residual);
    }
    assert!(worst < 1e-10, "Einstein residual {worst}");

    // conformally flat and Einstein at once
    let flat = geometry("x3^2 + x4^2");
    for _ in 0..50 {
        let p = random_point(&mut rng);
        let v = flat.predicates(&p, 1e-8).unwrap();
        assert!(v.einstein && v.conformally_flat && v.constant_curvature);
    }

    // H = x3^2 fails both with residuals exactly 2 at x3 = 1
    let proper = geometry("x3^2");
    let v = proper
        .predicates(&SpacetimePoint::new(0.0, 0.0, 1.0, 0.0), 1e-8)
        .unwrap();
    let pass = !v.einstein
        && !v.conformally_flat
        && (v.einstein_residual - 2.0).abs() < 1e-12
        && (v.conformal_residual - 2.0).abs() < 1e-12;
    println!(
        "criterion 4 ({}): Einstein residual {worst:.3e} on the vacuum member; x3^2 residuals \
         ({}, {})",
        if pass { "PASS" } else { "FAIL" },
        v.einstein_residual,
        v.conformal_residual
    );
    assert!(pass);
}

#[test]
fn criterion_5_gauss_codazzi_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst = 0.0f64;

    // ten random smooth immersions (graphs over (x1, x2, x3)), drawn away
    // from null degeneracy where the extrinsic problem is ill-posed
    let h_sources = ["x3^2 + x2*x4", "x3^3", "x3^2 * sin(x2)"];
    for idx in 0..10 {
        let geo = geometry(h_sources[idx % h_sources.len()]);
        let us: Vec<[f64; 3]> = (0..20)
            .map(|_| {
                [
                    rng.random_range(-1.5..1.5),
                    rng.random_range(-1.5..1.5),
                    rng.random_range(0.6..2.5),
                ]
            })
            .collect();
        let f = random_timelike_immersion(&geo, &mut rng, &us).unwrap();
        for &u in &us {
            let r = gauss_codazzi_residuals(&geo, &f, u).unwrap();
            worst = worst.max(r.gauss).max(r.codazzi);
        }
    }

    // every catalog immersion at 20 admissible points
    for entry in catalog_list(1.0) {
        let geo = entry.geometry(1.0).unwrap();
        for u in entry.draw_samples(20, 105).unwrap() {
            let r = gauss_codazzi_residuals(&geo, &entry.immersion, u).unwrap();
            worst = worst.max(r.gauss).max(r.codazzi);
        }
    }

    let pass = worst < 1e-5;
    println!(
        "criterion 5 ({}): Gauss/Codazzi identity residual {worst:.3e} (tol 1e-5)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "identity residual {worst}");
}

#[test]
fn criterion_6_classification_suite() {
    let start = Instant::now();
    let opts = ClassifyOptions::default();
    let mut all_pass = true;
    for entry in catalog_list(1.0) {
        let geo = entry.geometry(1.0).unwrap();
        let samples = entry.draw_samples(50, 106).unwrap();
        let report = classify_at(&geo, &entry.immersion, &samples, &opts).unwrap();
        let mut ok = entry.expected.matches(&report);

        match entry.name {
            "cor3.5" | "thm3.4" => {
                ok &= report.totally_geodesic && report.max_h < 1e-7;
            }
            "thm3.2" => {
                ok &= report.minimal && report.codazzi && !report.parallel;
            }
            _ => {
                // the proper parallel families
                ok &= report.parallel && report.max_nabla_h < 1e-6;
                ok &= !report.totally_geodesic && report.max_h > 1e-3;
            }
        }
        if let Some(expected_trace) = entry.expected.trace_magnitude {
            ok &= (report.max_abs_trace - expected_trace).abs() < 1e-6;
        }
        match entry.name {
            "thm4.2-fam1" => {
                let expected = (std::f64::consts::FRAC_PI_3).cos().abs();
                ok &= (report.max_abs_trace - expected).abs() < 1e-6;
            }
            "thm4.2-fam2" | "thm4.3-case6" => {
                ok &= (report.max_abs_trace - 1.0).abs() < 1e-6;
            }
            _ => {}
        }
        println!(
            "criterion 6 ({}): {} verdicts tg={} par={} cod={} min={} cmc={} |tr|={:.6}",
            if ok { "PASS" } else { "FAIL" },
            entry.name,
            report.totally_geodesic,
            report.parallel,
            report.codazzi,
            report.minimal,
            report.cmc,
            report.max_abs_trace,
        );
        all_pass &= ok;
        assert!(ok, "{}: {report:?}", entry.name);
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 6 ({}): all 12 families, {:.2?} (limit 120 s)",
        if all_pass && elapsed.as_secs_f64() < 120.0 {
            "PASS"
        } else {
            "FAIL"
        },
        elapsed
    );
    assert!(elapsed.as_secs_f64() < 120.0, "runtime {elapsed:?} over 2 min");
}

#[test]
fn criterion_7_timelike_invariant() {
    let mut pass = true;
    for entry in catalog_list(1.0) {
        let geo = entry.geometry(1.0).unwrap();
        let samples = entry.draw_samples(50, 107).unwrap();
        let report = classify_at(&geo, &entry.immersion, &samples, &ClassifyOptions::default())
            .unwrap();
        let ok = report.epsilon == 1.0 && report.epsilon_uniform && report.max_induced_det < 0.0;
        if !ok {
            println!(
                "criterion 7: {} epsilon {} uniform {} max det {}",
                entry.name, report.epsilon, report.epsilon_uniform, report.max_induced_det
            );
        }
        pass &= ok;
    }
    println!(
        "criterion 7 ({}): every catalog sample timelike (epsilon = +1, det(induced) < 0)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_8_geodesic_confinement() {
    let geo = geometry("x3^2");
    let (lambda, mu) = (2.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst_dist = 0.0f64;
    let mut worst_drift = 0.0f64;
    for _ in 0..5 {
        let x2 = rng.random_range(-1.0..1.0);
        let p0 = SpacetimePoint::new(
            rng.random_range(-1.0..1.0),
            x2,
            rng.random_range(0.8..1.5),
            lambda * x2 + mu,
        );
        let v2 = rng.random_range(-0.5..0.5);
        let v0 = [
            rng.random_range(-0.5..0.5),
            v2,
            rng.random_range(-0.3..0.3),
            lambda * v2,
        ];
        let trajectory = geo.integrate_geodesic(&p0, v0, 1.0, 1e-3).unwrap();
        let n0 = geo.velocity_norm(p0.coords(), v0).unwrap();
        for s in &trajectory {
            worst_dist = worst_dist.max((s.position[3] - lambda * s.position[1] - mu).abs());
            worst_drift = worst_drift
                .max((geo.velocity_norm(s.position, s.velocity).unwrap() - n0).abs());
        }
    }
    let pass = worst_dist < 1e-6 && worst_drift < 1e-6;
    println!(
        "criterion 8 ({}): confinement {worst_dist:.3e}, norm drift {worst_drift:.3e} (tol 1e-6)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_9_deterministic_report() {
    let cfg = VerificationConfig {
        seed: 42,
        samples_per_check: 25,
        ..VerificationConfig::default()
    };
    let first = run_suite(&cfg).unwrap().to_json();
    let second = run_suite(&cfg).unwrap().to_json();
    let pass = first == second;
    println!(
        "criterion 9 ({}): fixed-seed reports byte-identical ({} bytes)",
        if pass { "PASS" } else { "FAIL" },
        first.len()
    );
    assert_eq!(first, second);
    // and the full default suite is green
    assert_eq!(ENTRY_NAMES.len(), 12);
    let report = run_suite(&cfg).unwrap();
    assert!(
        report.all_passed(),
        "suite failures: {:?}",
        report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| &c.name)
            .collect::<Vec<_>>()
    );
}
