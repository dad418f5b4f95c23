//! The orchestrated verification suite.
//!
//! `run_suite` exercises every cross-check the engine offers: connection and
//! curvature oracles over a fixed panel of defining functions, tensor
//! symmetries, the constant-curvature limit, predicate spot checks,
//! Gauss/Codazzi identity residuals on random immersions, one classification
//! run per catalog entry, and a geodesic confinement run. Check failures are
//! recorded, never thrown; the report is a deterministic function of the
//! configuration.

use crate::ambient::{AmbientGeometry, DefiningFunction, GeomError, SpacetimePoint};
use crate::catalog::build_entry;
use crate::hypersurface::{
    classify_at, gauss_codazzi_residuals, Immersion,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tol_h: f64,
    pub tol_p: f64,
    pub tol_identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_h: 1e-7,
            tol_p: 1e-6,
            tol_identity: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub beta: f64,
    pub seed: u64,
    pub samples_per_check: usize,
    pub tolerances: Tolerances,
    /// Substring filters on check names; empty means all checks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub selected: Vec<String>,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            beta: 1.0,
            seed: 0,
            samples_per_check: 100,
            tolerances: Tolerances::default(),
            selected: Vec::new(),
        }
    }
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if !(self.beta > 0.0) {
            return Err(VerifyError::Config(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if self.samples_per_check < 1 {
            return Err(VerifyError::Config("samples_per_check must be >= 1".into()));
        }
        let t = &self.tolerances;
        if !(t.tol_h > 0.0 && t.tol_p > 0.0 && t.tol_identity > 0.0) {
            return Err(VerifyError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }

    fn selects(&self, name: &str) -> bool {
        self.selected.is_empty() || self.selected.iter().any(|s| name.contains(s.as_str()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residuals: BTreeMap<String, f64>,
    pub samples: usize,
    pub notes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<VerificationConfig>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn empty() -> Self {
        SuiteReport {
            config: None,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Gated residual collector: `pass` means every gated residual stayed under
/// its tolerance. Informational values carry an infinite tolerance.
struct Gate {
    residuals: BTreeMap<String, f64>,
    pass: bool,
}

impl Gate {
    fn new() -> Self {
        Gate {
            residuals: BTreeMap::new(),
            pass: true,
        }
    }

    fn gated(&mut self, name: &str, value: f64, tol: f64) {
        self.residuals.insert(name.to_string(), value);
        if !(value.is_finite() && value < tol) {
            self.pass = false;
        }
    }

    fn info(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_string(), value);
    }

    fn finish(self, name: &str, samples: usize, notes: String) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            pass: self.pass,
            residuals: self.residuals,
            samples,
            notes,
        }
    }
}

fn fnv1a(text: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn check_rng(cfg: &VerificationConfig, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv1a(name))
}

fn random_point(rng: &mut ChaCha8Rng) -> SpacetimePoint {
    SpacetimePoint::new(
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(0.5..3.0),
        rng.random_range(-2.0..2.0),
    )
}

/// The defining-function panel used by the oracle checks.
pub const H_PANEL: [(&str, &str); 8] = [
    ("zero", "0"),
    ("x3", "x3"),
    ("x3^2", "x3^2"),
    ("x3^3", "x3^3"),
    ("x3^4", "x3^4"),
    ("x3^-2", "x3^-2"),
    ("x3^2+x4^2", "x3^2 + x4^2"),
    ("x3^2+x2*x4", "x3^2 + x2*x4"),
];

fn geometry_for(cfg: &VerificationConfig, source: &str) -> Result<AmbientGeometry, GeomError> {
    AmbientGeometry::new(cfg.beta, DefiningFunction::parse(source).map_err(|e| {
        GeomError::InvalidParameter(format!("panel function `{source}`: {e}"))
    })?)
}

fn connection_check(cfg: &VerificationConfig, label: &str, source: &str) -> Result<CheckResult, GeomError> {
    let name = format!("connection/{label}");
    let geo = geometry_for(cfg, source)?;
    let mut rng = check_rng(cfg, &name);
    let mut oracle = 0.0f64;
    let mut compat = 0.0f64;
    let mut det_err = 0.0f64;
    let mut signature_bad = 0usize;
    for _ in 0..cfg.samples_per_check {
        let p = random_point(&mut rng);
        let closed = geo.christoffel_closed(&p)?;
        let koszul = geo.christoffel_koszul(&p)?;
        oracle = oracle.max(closed.max_abs_diff(&koszul));

        let metric = geo.metric_at(&p)?;
        let phi = cfg.beta * cfg.beta / (p.x3 * p.x3);
        let expected_det = -phi.powi(4);
        det_err = det_err.max((metric.det() - expected_det).abs() / expected_det.abs());
        if metric.signature() != (1, 3) {
            signature_bad += 1;
        }

        // metric compatibility with finite-difference metric derivatives
        // (Richardson-extrapolated once; the steep panel members need it)
        let x = p.coords();
        for i in 0..4 {
            let h = 1e-4 * x[i].abs().max(1.0);
            let central = |s: f64| -> Result<[[f64; 4]; 4], GeomError> {
                let mut xp = x;
                let mut xm = x;
                xp[i] += s;
                xm[i] -= s;
                let gp = geo.metric_at_coords(xp)?.g;
                let gm = geo.metric_at_coords(xm)?.g;
                let mut d = [[0.0; 4]; 4];
                for j in 0..4 {
                    for k in 0..4 {
                        d[j][k] = (gp[j][k] - gm[j][k]) / (2.0 * s);
                    }
                }
                Ok(d)
            };
            let coarse = central(h)?;
            let fine = central(h / 2.0)?;
            for j in 0..4 {
                for k in 0..4 {
                    let dg = (4.0 * fine[j][k] - coarse[j][k]) / 3.0;
                    let mut conn = 0.0;
                    for l in 0..4 {
                        conn += closed.gamma[l][i][j] * metric.g[l][k]
                            + closed.gamma[l][i][k] * metric.g[j][l];
                    }
                    compat = compat.max((dg - conn).abs());
                }
            }
        }
    }
    let mut gate = Gate::new();
    gate.gated("oracle", oracle, cfg.tolerances.tol_identity);
    gate.gated("metric-compat", compat, 1e-7);
    gate.gated("det", det_err, 1e-10);
    gate.gated("signature-violations", signature_bad as f64, 0.5);
    Ok(gate.finish(&name, cfg.samples_per_check, String::new()))
}

fn curvature_check(cfg: &VerificationConfig, label: &str, source: &str) -> Result<CheckResult, GeomError> {
    let name = format!("curvature/{label}");
    let geo = geometry_for(cfg, source)?;
    let mut rng = check_rng(cfg, &name);
    let mut oracle = 0.0f64;
    let mut sym_closed = 0.0f64;
    let mut sym_numeric = 0.0f64;
    for _ in 0..cfg.samples_per_check {
        let p = random_point(&mut rng);
        let closed = geo.riemann_closed(&p)?;
        let numeric = geo.riemann_from_gamma(&p)?;
        oracle = oracle.max(closed.max_abs_diff(&numeric));
        let metric = geo.metric_at(&p)?;
        sym_closed = sym_closed.max(closed.symmetry_residuals(&metric).worst());
        sym_numeric = sym_numeric.max(numeric.symmetry_residuals(&metric).worst());
    }
    let mut gate = Gate::new();
    gate.gated("oracle", oracle, 1e-6);
    gate.gated("symmetry-closed", sym_closed, cfg.tolerances.tol_identity);
    gate.gated("symmetry-numeric", sym_numeric, 1e-6);
    Ok(gate.finish(&name, cfg.samples_per_check, String::new()))
}

fn ads_check(cfg: &VerificationConfig) -> Result<CheckResult, GeomError> {
    let name = "ads/constant-curvature";
    let geo = geometry_for(cfg, "0")?;
    let mut rng = check_rng(cfg, name);
    let beta = cfg.beta;
    let mut sectional = 0.0f64;
    let mut form = 0.0f64;
    for _ in 0..cfg.samples_per_check {
        let p = random_point(&mut rng);
        let k = geo.sectional_curvature(&p, [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0])?;
        sectional = sectional.max((k + 1.0 / (beta * beta)).abs());
        let metric = geo.metric_at(&p)?;
        let r = geo.riemann_from_gamma(&p)?.r;
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for kk in 0..4 {
                        let di = if l == i { 1.0 } else { 0.0 };
                        let dj = if l == j { 1.0 } else { 0.0 };
                        let expected =
                            -(metric.g[j][kk] * di - metric.g[i][kk] * dj) / (beta * beta);
                        form = form.max((r[l][i][j][kk] - expected).abs());
                    }
                }
            }
        }
    }
    let mut gate = Gate::new();
    gate.gated("sectional", sectional, 1e-10);
    gate.gated("curvature-form", form, 1e-6);
    Ok(gate.finish(name, cfg.samples_per_check, String::new()))
}

fn predicate_checks(cfg: &VerificationConfig) -> Vec<Result<CheckResult, GeomError>> {
    let run = |name: &'static str,
               source: &str,
               expect: (bool, bool, bool)|
     -> Result<CheckResult, GeomError> {
        let geo = geometry_for(cfg, source)?;
        let mut rng = check_rng(cfg, name);
        let mut gate = Gate::new();
        let mut worst_e = 0.0f64;
        let mut worst_c = 0.0f64;
        let mut worst_m = 0.0f64;
        let mut mismatches = 0usize;
        for _ in 0..cfg.samples_per_check {
            let p = random_point(&mut rng);
            let verdict = geo.predicates(&p, 1e-8)?;
            worst_e = worst_e.max(verdict.einstein_residual);
            worst_c = worst_c.max(verdict.conformal_residual);
            worst_m = worst_m.max(verdict.mixed_residual);
            if (verdict.einstein, verdict.conformally_flat, verdict.constant_curvature) != expect
            {
                mismatches += 1;
            }
        }
        if expect.0 {
            gate.gated("einstein", worst_e, 1e-10);
        } else {
            gate.info("einstein", worst_e);
        }
        if expect.1 {
            gate.gated("conformal", worst_c, 1e-10);
            gate.gated("mixed", worst_m, 1e-10);
        } else {
            gate.info("conformal", worst_c);
            gate.info("mixed", worst_m);
        }
        gate.gated("verdict-mismatches", mismatches as f64, 0.5);
        Ok(gate.finish(name, cfg.samples_per_check, String::new()))
    };
    let proper = |name: &'static str| -> Result<CheckResult, GeomError> {
        // H = x3^2 at x3 = 1: both residuals are exactly 2 and both
        // predicates fail
        let geo = geometry_for(cfg, "x3^2")?;
        let p = SpacetimePoint::new(0.0, 0.0, 1.0, 0.0);
        let verdict = geo.predicates(&p, 1e-8)?;
        let mut gate = Gate::new();
        gate.gated("einstein-minus-2", (verdict.einstein_residual - 2.0).abs(), 1e-12);
        gate.gated(
            "conformal-minus-2",
            (verdict.conformal_residual - 2.0).abs(),
            1e-12,
        );
        let mismatches = usize::from(verdict.einstein)
            + usize::from(verdict.conformally_flat)
            + usize::from(verdict.constant_curvature);
        gate.gated("verdict-mismatches", mismatches as f64, 0.5);
        Ok(gate.finish(name, 1, String::new()))
    };
    vec![
        run("predicates/kaigorodov", "x3^3", (true, false, false)),
        run(
            "predicates/conformally-flat",
            "x3^2 + x4^2",
            (true, true, true),
        ),
        proper("predicates/proper-x3^2"),
    ]
}

/// A random graph-type immersion over `(x1, x2, x3)` (automatically rank 3
/// and on the chart), redrawn until it is uniformly timelike and bounded
/// away from nullity on the given points. The extrinsic problem is
/// ill-posed where the induced metric degenerates, so near-null draws
/// cannot serve as identity checks.
pub fn random_timelike_immersion(
    geo: &AmbientGeometry,
    rng: &mut ChaCha8Rng,
    points: &[[f64; 3]],
) -> Result<Immersion, GeomError> {
    for _ in 0..100 {
        let mut c = || rng.random_range(-0.6..0.6);
        let f4 = format!(
            "({}) * u2^2 + ({}) * u2 * u3 + ({}) * sin(u2) + ({}) * u1 + ({}) * u3",
            c(),
            c(),
            c(),
            c(),
            c()
        );
        let f = Immersion::parse(["u1", "u2", "u3", &f4])
            .map_err(|e| GeomError::InvalidParameter(format!("random immersion: {e}")))?;
        let well_conditioned = points.iter().all(|&u| {
            match crate::hypersurface::extrinsic_at(geo, &f, u) {
                // judge degeneracy relative to the conformal volume scale:
                // a plain x4 = const slice has det = -(beta^2/x3^2)^3
                Ok(data) => {
                    let phi = geo.beta * geo.beta / (data.point.x3 * data.point.x3);
                    data.epsilon == 1.0 && data.induced_det() < -0.1 * phi.powi(3)
                }
                Err(_) => false,
            }
        });
        if well_conditioned {
            return Ok(f);
        }
    }
    Err(GeomError::InvalidParameter(
        "could not draw a uniformly timelike random immersion".into(),
    ))
}

fn identity_check(cfg: &VerificationConfig) -> Result<CheckResult, GeomError> {
    let name = "identities/random-immersions";
    let mut rng = check_rng(cfg, name);
    let points = cfg.samples_per_check.min(20);
    let h_sources = ["x3^2 + x2*x4", "x3^3", "x3^2 * sin(x2)"];
    let mut gauss = 0.0f64;
    let mut codazzi = 0.0f64;
    for idx in 0..10 {
        let geo = geometry_for(cfg, h_sources[idx % h_sources.len()])?;
        let us: Vec<[f64; 3]> = (0..points)
            .map(|_| {
                [
                    rng.random_range(-1.5..1.5),
                    rng.random_range(-1.5..1.5),
                    rng.random_range(0.6..2.5),
                ]
            })
            .collect();
        let f = random_timelike_immersion(&geo, &mut rng, &us)?;
        for &u in &us {
            let r = gauss_codazzi_residuals(&geo, &f, u)?;
            gauss = gauss.max(r.gauss);
            codazzi = codazzi.max(r.codazzi);
        }
    }
    let mut gate = Gate::new();
    gate.gated("gauss", gauss, 1e-5);
    gate.gated("codazzi", codazzi, 1e-5);
    Ok(gate.finish(name, 10 * points, String::new()))
}

fn classify_check(cfg: &VerificationConfig, entry_name: &'static str) -> Result<CheckResult, GeomError> {
    let name = format!("classify/{entry_name}");
    let entry = build_entry(entry_name, cfg.beta, &BTreeMap::new(), None, None)?;
    let geo = entry.geometry(cfg.beta)?;
    let count = (cfg.samples_per_check / 2).max(1);
    let samples = entry.draw_samples(count, cfg.seed ^ fnv1a(&name))?;
    let opts = crate::hypersurface::ClassifyOptions {
        tol_h: cfg.tolerances.tol_h,
        tol_p: cfg.tolerances.tol_p,
    };

    let mut gate = Gate::new();
    for (cond, value) in entry.check_preconditions(&geo, &samples)? {
        gate.gated(&format!("precond-{cond}"), value, 1e-8);
    }

    let report = classify_at(&geo, &entry.immersion, &samples, &opts)?;
    gate.gated(
        "verdict-mismatches",
        entry.expected.mismatch_count(&report) as f64,
        0.5,
    );
    if let Some(expected_trace) = entry.expected.trace_magnitude {
        gate.gated(
            "cmc-error",
            (report.max_abs_trace - expected_trace).abs(),
            1e-6,
        );
    }
    let timelike_ok = report.epsilon == 1.0 && report.epsilon_uniform && report.max_induced_det < 0.0;
    gate.gated("timelike-violations", if timelike_ok { 0.0 } else { 1.0 }, 0.5);

    // Gauss/Codazzi identity residuals on a handful of the samples
    let mut gauss = 0.0f64;
    let mut codazzi = 0.0f64;
    for u in samples.iter().take(5) {
        let r = gauss_codazzi_residuals(&geo, &entry.immersion, *u)?;
        gauss = gauss.max(r.gauss);
        codazzi = codazzi.max(r.codazzi);
    }
    gate.gated("gauss", gauss, 1e-5);
    gate.gated("codazzi", codazzi, 1e-5);

    gate.info("max-h", report.max_h);
    gate.info("max-nabla-h", report.max_nabla_h);
    gate.info("codazzi-asym", report.max_codazzi_asym);
    gate.info("trace-spread", report.trace_spread);
    gate.info("abs-trace", report.max_abs_trace);

    Ok(gate.finish(&name, samples.len(), entry.notes.clone()))
}

fn geodesic_check(cfg: &VerificationConfig) -> Result<CheckResult, GeomError> {
    let name = "geodesic/confinement";
    let geo = geometry_for(cfg, "x3^2")?;
    let (lambda, mu) = (2.0, 1.0);
    let mut rng = check_rng(cfg, name);
    let mut dist = 0.0f64;
    let mut drift = 0.0f64;
    for _ in 0..3 {
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
        let trajectory = geo.integrate_geodesic(&p0, v0, 1.0, 1e-3)?;
        let n0 = geo.velocity_norm(p0.coords(), v0)?;
        for s in &trajectory {
            dist = dist.max((s.position[3] - lambda * s.position[1] - mu).abs());
            drift = drift.max((geo.velocity_norm(s.position, s.velocity)? - n0).abs());
        }
    }
    let mut gate = Gate::new();
    gate.gated("confinement", dist, 1e-6);
    gate.gated("norm-drift", drift, 1e-6);
    Ok(gate.finish(name, 3, "hyperplane x4 = 2 x2 + 1 with H = x3^2".into()))
}

fn push(
    checks: &mut Vec<CheckResult>,
    cfg: &VerificationConfig,
    name: &str,
    result: Result<CheckResult, GeomError>,
) {
    if !cfg.selects(name) {
        return;
    }
    match result {
        Ok(check) => checks.push(check),
        Err(err) => checks.push(CheckResult {
            name: name.to_string(),
            pass: false,
            residuals: BTreeMap::new(),
            samples: 0,
            notes: format!("check aborted: {err}"),
        }),
    }
}

/// Run the configured checks and assemble the deterministic report.
pub fn run_suite(cfg: &VerificationConfig) -> Result<SuiteReport, VerifyError> {
    cfg.validate()?;
    let mut checks = Vec::new();

    let name = "ads/constant-curvature".to_string();
    if cfg.selects(&name) {
        push(&mut checks, cfg, &name, ads_check(cfg));
    }
    for (label, source) in H_PANEL {
        let name = format!("connection/{label}");
        if cfg.selects(&name) {
            push(&mut checks, cfg, &name, connection_check(cfg, label, source));
        }
        let name = format!("curvature/{label}");
        if cfg.selects(&name) {
            push(&mut checks, cfg, &name, curvature_check(cfg, label, source));
        }
    }
    for result in predicate_checks(cfg) {
        let name = match &result {
            Ok(c) => c.name.clone(),
            Err(_) => "predicates".to_string(),
        };
        push(&mut checks, cfg, &name, result);
    }
    {
        let name = "identities/random-immersions".to_string();
        if cfg.selects(&name) {
            push(&mut checks, cfg, &name, identity_check(cfg));
        }
    }
    for entry in crate::catalog::ENTRY_NAMES {
        let name = format!("classify/{entry}");
        if cfg.selects(&name) {
            push(&mut checks, cfg, &name, classify_check(cfg, entry));
        }
    }
    {
        let name = "geodesic/confinement".to_string();
        if cfg.selects(&name) {
            push(&mut checks, cfg, &name, geodesic_check(cfg));
        }
    }

    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    Ok(SuiteReport {
        config: Some(cfg.clone()),
        checks,
        summary: Summary { passed, failed },
    })
}

/// Serialize a report with the documented schema.
pub fn report_to_json(report: &SuiteReport) -> String {
    report.to_json()
}
