//! The catalog of classified hypersurface families.
//!
//! Each entry packages a defining function, a parameterized immersion, the
//! verdicts the classification is expected to produce, a sampling domain
//! with an admissibility predicate, the side conditions the family must
//! satisfy along the immersion (as machine-checkable residuals), and a
//! closed implicit description of the image used for geodesic-confinement
//! checks.
//!
//! Entry names double as the CLI `--family` vocabulary.

use crate::ambient::{AmbientGeometry, DefiningFunction, GeomError, SpacetimePoint};
use crate::expr::Expr;
use crate::hypersurface::{ClassificationReport, Immersion};
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

/// Flags a classification run is expected to produce, plus the expected
/// mean-curvature magnitude where the family pins one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedVerdicts {
    pub totally_geodesic: bool,
    pub parallel: bool,
    pub codazzi: bool,
    pub minimal: bool,
    pub cmc: bool,
    pub trace_magnitude: Option<f64>,
}

impl ExpectedVerdicts {
    fn totally_geodesic() -> Self {
        ExpectedVerdicts {
            totally_geodesic: true,
            parallel: true,
            codazzi: true,
            minimal: true,
            cmc: true,
            trace_magnitude: Some(0.0),
        }
    }

    fn proper_parallel(trace: f64) -> Self {
        ExpectedVerdicts {
            totally_geodesic: false,
            parallel: true,
            codazzi: true,
            minimal: false,
            cmc: true,
            trace_magnitude: Some(trace),
        }
    }

    /// Number of boolean verdicts that disagree with a report.
    pub fn mismatch_count(&self, report: &ClassificationReport) -> usize {
        [
            self.totally_geodesic == report.totally_geodesic,
            self.parallel == report.parallel,
            self.codazzi == report.codazzi,
            self.minimal == report.minimal,
            self.cmc == report.cmc,
        ]
        .iter()
        .filter(|&&ok| !ok)
        .count()
    }

    pub fn matches(&self, report: &ClassificationReport) -> bool {
        self.mismatch_count(report) == 0
    }
}

/// Family side conditions, evaluated as residuals along the immersion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideCondition {
    /// H''34 = 0 along F.
    MixedHessian34,
    /// H''23 = 0 along F.
    Hessian23,
    /// H''33 = 0 along F.
    Hessian33,
    /// H'3 = 0 along F.
    Grad3,
    /// H'4 = 0 along F.
    Grad4,
    /// 2 f''(u2) = H'4 along F (the totally geodesic ODE, with f = F4).
    GeodesicOde,
    /// H'3 + tan(theta) H'4 = 0 along F.
    GradientAngle { theta: f64 },
    /// sin(2 theta)(H''33 - H''44) - 2 cos(2 theta) H''34 = 0 along F.
    NormalAngle { theta: f64 },
}

impl SideCondition {
    pub fn name(&self) -> &'static str {
        match self {
            SideCondition::MixedHessian34 => "H34",
            SideCondition::Hessian23 => "H23",
            SideCondition::Hessian33 => "H33",
            SideCondition::Grad3 => "H3",
            SideCondition::Grad4 => "H4",
            SideCondition::GeodesicOde => "geodesic-ode",
            SideCondition::GradientAngle { .. } => "gradient-angle",
            SideCondition::NormalAngle { .. } => "normal-angle",
        }
    }

    pub fn residual(
        &self,
        geo: &AmbientGeometry,
        f: &Immersion,
        u: [f64; 3],
    ) -> Result<f64, GeomError> {
        let jets = f.jets_at(u)?;
        let point = SpacetimePoint::new(jets[0].value, jets[1].value, jets[2].value, jets[3].value);
        let hd = geo.h_at(&point)?;
        Ok(match self {
            SideCondition::MixedHessian34 => hd.h34.abs(),
            SideCondition::Hessian23 => hd.h23.abs(),
            SideCondition::Hessian33 => hd.h33.abs(),
            SideCondition::Grad3 => hd.h3.abs(),
            SideCondition::Grad4 => hd.h4.abs(),
            SideCondition::GeodesicOde => (2.0 * jets[3].hess[1][1] - hd.h4).abs(),
            SideCondition::GradientAngle { theta } => (hd.h3 + theta.tan() * hd.h4).abs(),
            SideCondition::NormalAngle { theta } => {
                geo.codazzi_angle_residual(&point, *theta)?.abs()
            }
        })
    }
}

/// Where in the parameter box sampling is admissible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Admissibility {
    All,
    /// `intercept + slope * u3 > floor` (keeps square-root arguments away
    /// from the branch point).
    RadicandInU3 {
        slope: f64,
        intercept: f64,
        floor: f64,
    },
}

impl Admissibility {
    pub fn admits(&self, u: [f64; 3]) -> bool {
        match *self {
            Admissibility::All => true,
            Admissibility::RadicandInU3 {
                slope,
                intercept,
                floor,
            } => intercept + slope * u[2] > floor,
        }
    }
}

/// Closed implicit description of a family's image, used to measure how far
/// an ambient point drifts from the hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub enum ImplicitSurface {
    /// |c2 x2 + c3 x3 + c4 x4 - rhs|
    Linear { c2: f64, c3: f64, c4: f64, rhs: f64 },
    /// |x4 - f(x2)| for the cylinder families.
    Graph4 { f: Expr },
    /// |x3 - rho e^{-x2}|
    ExpGraph { rho: f64 },
    /// |x2 - x3^{1-k}/(k-1)|
    PowerGraph { k: f64 },
    /// |x4 + cot(theta) (x3 + u3(x2))| with u3 recovered from the square
    /// root in the second component.
    SqrtSheet {
        cot_theta: f64,
        w_sq: f64,
        d: f64,
        epsilon: f64,
    },
}

impl ImplicitSurface {
    pub fn distance(&self, p: &SpacetimePoint) -> f64 {
        match self {
            ImplicitSurface::Linear { c2, c3, c4, rhs } => {
                (c2 * p.x2 + c3 * p.x3 + c4 * p.x4 - rhs).abs()
            }
            ImplicitSurface::Graph4 { f } => match f.eval_value(&[p.x2]) {
                Ok(v) => (p.x4 - v).abs(),
                Err(_) => f64::NAN,
            },
            ImplicitSurface::ExpGraph { rho } => (p.x3 - rho * (-p.x2).exp()).abs(),
            ImplicitSurface::PowerGraph { k } => {
                (p.x2 - p.x3.powf(1.0 - k) / (k - 1.0)).abs()
            }
            ImplicitSurface::SqrtSheet {
                cot_theta,
                w_sq,
                d,
                epsilon,
            } => {
                let u3 = epsilon * (d - w_sq * p.x2 * p.x2 / 4.0) / w_sq;
                (p.x4 + cot_theta * (p.x3 + u3)).abs()
            }
        }
    }
}

/// Free parameters of the catalog families with the default values used
/// when nothing is overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub epsilon: f64,
    pub k: f64,
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub theta: f64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        // generic values, with theta bounded away from 0 and pi/2
        FamilyParams {
            epsilon: 1.0,
            k: f64::NAN, // per-family default
            lambda: 2.0,
            mu: 1.0,
            rho: 1.0,
            c: 2.0,
            d: 1.0,
            e: 1.0,
            theta: FRAC_PI_3,
        }
    }
}

impl FamilyParams {
    pub fn apply_overrides(&mut self, overrides: &BTreeMap<String, f64>) -> Result<(), GeomError> {
        for (key, &value) in overrides {
            match key.as_str() {
                "epsilon" => self.epsilon = value,
                "k" => self.k = value,
                "lambda" => self.lambda = value,
                "mu" => self.mu = value,
                "rho" => self.rho = value,
                "C" | "c" => self.c = value,
                "D" | "d" => self.d = value,
                "E" | "e" => self.e = value,
                "theta" => self.theta = value,
                other => {
                    return Err(GeomError::InvalidParameter(format!(
                        "unknown family parameter `{other}`"
                    )))
                }
            }
        }
        if self.epsilon != 1.0 && self.epsilon != -1.0 {
            return Err(GeomError::InvalidParameter(format!(
                "epsilon must be +1 or -1, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// One classified family, ready to sample and classify.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: String,
    pub h: DefiningFunction,
    pub immersion: Immersion,
    pub expected: ExpectedVerdicts,
    pub bounds: [(f64, f64); 3],
    pub admissibility: Admissibility,
    pub side_conditions: Vec<SideCondition>,
    pub implicit: ImplicitSurface,
    pub notes: String,
    /// Resolved parameter values, for display and report notes.
    pub params: BTreeMap<String, f64>,
}

impl CatalogEntry {
    /// Uniform samples from the entry's box, rejecting inadmissible points.
    pub fn draw_samples(&self, count: usize, seed: u64) -> Result<Vec<[f64; 3]>, GeomError> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0usize;
        while out.len() < count {
            if attempts > 200 * count.max(1) {
                return Err(GeomError::InvalidParameter(format!(
                    "sampling box for `{}` is mostly inadmissible",
                    self.name
                )));
            }
            attempts += 1;
            let mut u = [0.0; 3];
            for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
                u[i] = if hi > lo { rng.random_range(lo..hi) } else { lo };
            }
            if self.admissibility.admits(u) {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// Maximum residual of every side condition over the samples.
    pub fn check_preconditions(
        &self,
        geo: &AmbientGeometry,
        samples: &[[f64; 3]],
    ) -> Result<BTreeMap<String, f64>, GeomError> {
        let mut out = BTreeMap::new();
        for cond in &self.side_conditions {
            let mut worst = 0.0f64;
            for &u in samples {
                if !self.admissibility.admits(u) {
                    return Err(GeomError::DomainViolation { u });
                }
                worst = worst.max(cond.residual(geo, &self.immersion, u)?);
            }
            out.insert(cond.name().to_string(), worst);
        }
        Ok(out)
    }

    pub fn geometry(&self, beta: f64) -> Result<AmbientGeometry, GeomError> {
        AmbientGeometry::new(beta, self.h.clone())
    }
}

/// All entry names, in catalog order.
pub const ENTRY_NAMES: [&str; 12] = [
    "cor3.5",
    "thm3.2",
    "thm3.4",
    "thm4.2-fam1",
    "thm4.2-fam2",
    "thm4.3-case1a",
    "thm4.3-case1b",
    "thm4.3-case2",
    "thm4.3-case3",
    "thm4.3-case4",
    "thm4.3-case5",
    "thm4.3-case6",
];

/// Named defining-function presets for the CLI (`zero` and the homogeneous
/// family including its three classical members).
pub fn defining_function_preset(
    name: &str,
    epsilon: f64,
    k: Option<f64>,
) -> Result<DefiningFunction, GeomError> {
    match name {
        "zero" | "ads" => Ok(DefiningFunction::zero()),
        "kaigorodov" => Ok(DefiningFunction::homogeneous(epsilon, 1.5)),
        "defrise" => Ok(DefiningFunction::homogeneous(epsilon, -1.0)),
        "ozsvath" => Ok(DefiningFunction::homogeneous(epsilon, 2.0)),
        "homogeneous" => {
            let k = k.ok_or_else(|| {
                GeomError::InvalidParameter(
                    "the homogeneous preset needs an exponent parameter k".into(),
                )
            })?;
            Ok(DefiningFunction::homogeneous(epsilon, k))
        }
        other => Err(GeomError::InvalidParameter(format!(
            "unknown defining-function preset `{other}`"
        ))),
    }
}

fn fmt(v: f64) -> String {
    format!("({v})")
}

fn require(cond: bool, msg: &str) -> Result<(), GeomError> {
    if cond {
        Ok(())
    } else {
        Err(GeomError::InvalidParameter(msg.to_string()))
    }
}

/// Build one catalog entry with the given ambient scale, parameter
/// overrides, and optional defining-function / free-function overrides.
pub fn build_entry(
    name: &str,
    beta: f64,
    overrides: &BTreeMap<String, f64>,
    h_override: Option<&str>,
    f_override: Option<&str>,
) -> Result<CatalogEntry, GeomError> {
    require(beta > 0.0, "beta must be positive")?;
    let mut p = FamilyParams::default();
    let parse_h = |default: &str| -> Result<DefiningFunction, GeomError> {
        DefiningFunction::parse(h_override.unwrap_or(default)).map_err(|e| {
            GeomError::InvalidParameter(format!("bad defining function: {e}"))
        })
    };
    let immersion = |srcs: [&str; 4]| -> Result<Immersion, GeomError> {
        Immersion::parse(srcs)
            .map_err(|e| GeomError::InvalidParameter(format!("bad immersion: {e}")))
    };

    match name {
        "cor3.5" => {
            p.apply_overrides(overrides)?;
            let f4 = f_override
                .map(str::to_string)
                .unwrap_or_else(|| format!("{} * u2 + {}", fmt(p.lambda), fmt(p.mu)));
            let entry = CatalogEntry {
                name: "cor3.5",
                summary: "totally geodesic hyperplane x4 = lambda x2 + mu (x4-independent H)"
                    .into(),
                h: parse_h("x3^2 * sin(x2)")?,
                immersion: immersion(["u1", "u2", "u3", &f4])?,
                expected: ExpectedVerdicts::totally_geodesic(),
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (0.5, 3.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::Grad4,
                    SideCondition::MixedHessian34,
                    SideCondition::GeodesicOde,
                    SideCondition::NormalAngle { theta: FRAC_PI_2 },
                ],
                implicit: ImplicitSurface::Linear {
                    c2: -p.lambda,
                    c3: 0.0,
                    c4: 1.0,
                    rhs: p.mu,
                },
                notes: String::new(),
                params: BTreeMap::from([
                    ("lambda".into(), p.lambda),
                    ("mu".into(), p.mu),
                ]),
            };
            Ok(entry)
        }
        "thm3.2" => {
            p.apply_overrides(overrides)?;
            let f4 = f_override.unwrap_or("u2^2");
            let f_expr = Expr::parse(f4, &["u2"])
                .map_err(|e| GeomError::InvalidParameter(format!("bad free function: {e}")))?;
            Ok(CatalogEntry {
                name: "thm3.2",
                summary: "minimal Codazzi cylinder x4 = f(u2) with H''34 = 0 along it".into(),
                h: parse_h("x3^2 + x2*x4")?,
                immersion: immersion(["u1", "u2", "u3", f4])?,
                expected: ExpectedVerdicts {
                    totally_geodesic: false,
                    parallel: false,
                    codazzi: true,
                    minimal: true,
                    cmc: true,
                    trace_magnitude: Some(0.0),
                },
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (0.5, 3.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::MixedHessian34,
                    SideCondition::NormalAngle { theta: FRAC_PI_2 },
                ],
                implicit: ImplicitSurface::Graph4 { f: f_expr },
                notes: "properness (not parallel) needs f'' - H'4/2 nonconstant along the \
                        cylinder"
                    .into(),
                params: BTreeMap::new(),
            })
        }
        "thm3.4" => {
            p.apply_overrides(overrides)?;
            let f4 = f_override.unwrap_or("exp(u2)");
            let f_expr = Expr::parse(f4, &["u2"])
                .map_err(|e| GeomError::InvalidParameter(format!("bad free function: {e}")))?;
            Ok(CatalogEntry {
                name: "thm3.4",
                summary: "totally geodesic cylinder: H''34 = 0 and 2 f'' = H'4 along x4 = f(u2)"
                    .into(),
                h: parse_h("x3^2 + x4^2")?,
                immersion: immersion(["u1", "u2", "u3", f4])?,
                expected: ExpectedVerdicts::totally_geodesic(),
                bounds: [(-2.0, 2.0), (-1.5, 1.5), (0.5, 3.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::MixedHessian34,
                    SideCondition::GeodesicOde,
                    SideCondition::NormalAngle { theta: FRAC_PI_2 },
                ],
                implicit: ImplicitSurface::Graph4 { f: f_expr },
                notes: String::new(),
                params: BTreeMap::new(),
            })
        }
        "thm4.2-fam1" => {
            p.apply_overrides(overrides)?;
            require(
                p.theta.sin().abs() > 1e-3 && p.theta.cos().abs() > 1e-3,
                "thm4.2-fam1 needs theta bounded away from 0 and pi/2",
            )?;
            require(p.rho > 0.0, "thm4.2-fam1 needs rho > 0 for the chart")?;
            let tan_t = p.theta.tan();
            let cot_t = 1.0 / tan_t;
            let default_h = format!("sin(x2) + (x4 - {} * x3)^2", fmt(tan_t));
            let f3 = format!("{} * exp(u2)", fmt(p.rho));
            let f4 = format!("-{} * ({} * exp(u2)) + {}", fmt(cot_t), fmt(p.rho), fmt(p.c));
            Ok(CatalogEntry {
                name: "thm4.2-fam1",
                summary: "proper parallel exponential sheet under H'3 = -tan(theta) H'4".into(),
                h: parse_h(&default_h)?,
                immersion: immersion(["u1", "u3", &f3, &f4])?,
                expected: ExpectedVerdicts::proper_parallel(p.theta.cos().abs() / beta),
                bounds: [(-2.0, 2.0), (-0.7, 1.1), (-2.0, 2.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::GradientAngle { theta: p.theta },
                    SideCondition::NormalAngle { theta: p.theta },
                ],
                implicit: ImplicitSurface::Linear {
                    c2: 0.0,
                    c3: cot_t,
                    c4: 1.0,
                    rhs: p.c,
                },
                notes: String::new(),
                params: BTreeMap::from([
                    ("theta".into(), p.theta),
                    ("rho".into(), p.rho),
                    ("C".into(), p.c),
                ]),
            })
        }
        "thm4.2-fam2" => {
            p.apply_overrides(overrides)?;
            require(p.c != 0.0 && p.c > 0.0, "thm4.2-fam2 needs C > 0 for the chart")?;
            let f3 = fmt(p.c);
            Ok(CatalogEntry {
                name: "thm4.2-fam2",
                summary: "proper parallel slice x3 = C under H''23 = H''34 = 0".into(),
                h: parse_h("x3^4")?,
                immersion: immersion(["u1", "u3", &f3, "u2"])?,
                expected: ExpectedVerdicts::proper_parallel(1.0 / beta),
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (-2.0, 2.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::Hessian23,
                    SideCondition::MixedHessian34,
                    SideCondition::NormalAngle { theta: 0.0 },
                ],
                implicit: ImplicitSurface::Linear {
                    c2: 0.0,
                    c3: 1.0,
                    c4: 0.0,
                    rhs: p.c,
                },
                notes: String::new(),
                params: BTreeMap::from([("C".into(), p.c)]),
            })
        }
        "thm4.3-case1a" => {
            p.k = 0.0;
            p.apply_overrides(overrides)?;
            require(p.k == 0.0, "thm4.3-case1a is the k = 0 family")?;
            require(p.c > 0.0, "thm4.3-case1a needs C > 0 for the chart")?;
            let theta_n = (-p.c).atan2(p.d);
            let f3 = format!("{} * exp(u2)", fmt(p.c));
            let f4 = format!("{} * exp(u2)", fmt(p.d));
            Ok(CatalogEntry {
                name: "thm4.3-case1a",
                summary: "parallel exponential sheet (C e^u2, D e^u2) in the constant-H space"
                    .into(),
                h: DefiningFunction::homogeneous(p.epsilon, 0.0),
                immersion: immersion(["u1", "u3", &f3, &f4])?,
                expected: ExpectedVerdicts::proper_parallel(
                    p.d.abs() / (beta * (p.c * p.c + p.d * p.d).sqrt()),
                ),
                bounds: [(-2.0, 2.0), (-0.7, 1.1), (-2.0, 2.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::Grad3,
                    SideCondition::Grad4,
                    SideCondition::NormalAngle { theta: theta_n },
                ],
                implicit: ImplicitSurface::Linear {
                    c2: 0.0,
                    c3: p.d,
                    c4: -p.c,
                    rhs: 0.0,
                },
                notes: "C > 0 is an added assumption: the chart needs x3 = C e^{u2} > 0, and \
                        it already gives the immersion full rank"
                    .into(),
                params: BTreeMap::from([
                    ("C".into(), p.c),
                    ("D".into(), p.d),
                    ("epsilon".into(), p.epsilon),
                ]),
            })
        }
        "thm4.3-case1b" => {
            p.k = 0.0;
            p.apply_overrides(overrides)?;
            require(p.k == 0.0, "thm4.3-case1b is the k = 0 family")?;
            require(p.d > 0.0, "thm4.3-case1b needs D > 0 for the chart")?;
            require(p.c != 0.0, "thm4.3-case1b needs C != 0")?;
            let theta_n = (-p.d).atan2(p.e);
            let f2 = format!("{} * u3", fmt(p.c));
            let f3 = format!("{} * exp(u2)", fmt(p.d));
            let f4 = format!("{} * exp(u2) - u3", fmt(p.e));
            Ok(CatalogEntry {
                name: "thm4.3-case1b",
                summary: "parallel sheet (C u3, D e^u2, E e^u2 - u3) in the constant-H space"
                    .into(),
                h: DefiningFunction::homogeneous(p.epsilon, 0.0),
                immersion: immersion(["u1", &f2, &f3, &f4])?,
                expected: ExpectedVerdicts::proper_parallel(
                    p.e.abs() / (beta * (p.d * p.d + p.e * p.e).sqrt()),
                ),
                bounds: [(-2.0, 2.0), (-0.7, 1.1), (-2.0, 2.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::Grad3,
                    SideCondition::Grad4,
                    SideCondition::NormalAngle { theta: theta_n },
                ],
                implicit: ImplicitSurface::Linear {
                    c2: 1.0 / p.c,
                    c3: -p.e / p.d,
                    c4: 1.0,
                    rhs: 0.0,
                },
                notes: String::new(),
                params: BTreeMap::from([
                    ("C".into(), p.c),
                    ("D".into(), p.d),
                    ("E".into(), p.e),
                    ("epsilon".into(), p.epsilon),
                ]),
            })
        }
        "thm4.3-case2" => {
            p.k = 0.5;
            p.apply_overrides(overrides)?;
            require(p.k == 0.5, "thm4.3-case2 is the k = 1/2 family")?;
            require(
                p.theta.sin().abs() > 1e-3 && p.theta.cos().abs() > 1e-3,
                "thm4.3-case2 needs theta bounded away from 0 and pi/2",
            )?;
            require(p.c != 0.0, "thm4.3-case2 needs C != 0")?;
            let w = p.c * p.theta.cos() / beta;
            let w_sq = w * w;
            let slope = -p.epsilon * w_sq;
            let cot_t = 1.0 / p.theta.tan();
            // pick the u3 box inside the admissible half-line, keeping the
            // radicand above 0.35 with floor 0.25
            let boundary = (0.35 - p.d) / slope;
            let u3_bounds = if slope < 0.0 {
                (boundary - 2.5, boundary)
            } else {
                (boundary, boundary + 2.5)
            };
            let f2 = format!(
                "{} * sqrt({} + {} * u3)",
                fmt(-2.0 * p.epsilon / w),
                fmt(p.d),
                fmt(slope)
            );
            let f3 = format!("{} * u2", fmt(beta));
            let f4 = format!("-{} * ({} * u2 + u3)", fmt(cot_t), fmt(beta));
            Ok(CatalogEntry {
                name: "thm4.3-case2",
                summary: "parallel square-root sheet of the k = 1/2 homogeneous space".into(),
                h: DefiningFunction::homogeneous(p.epsilon, 0.5),
                immersion: immersion(["u1", &f2, &f3, &f4])?,
                expected: ExpectedVerdicts::proper_parallel(p.theta.cos().abs() / beta),
                bounds: [(-2.0, 2.0), (0.5 / beta, 3.0 / beta), u3_bounds],
                admissibility: Admissibility::RadicandInU3 {
                    slope,
                    intercept: p.d,
                    floor: 0.25,
                },
                side_conditions: vec![
                    SideCondition::Hessian33,
                    SideCondition::NormalAngle { theta: p.theta },
                ],
                implicit: ImplicitSurface::SqrtSheet {
                    cot_theta: cot_t,
                    w_sq,
                    d: p.d,
                    epsilon: p.epsilon,
                },
                notes: "sampling restricted to radicand D - epsilon (C cos(theta)/beta)^2 u3 \
                        > 0.25 to keep derivatives well-conditioned near the branch point"
                    .into(),
                params: BTreeMap::from([
                    ("theta".into(), p.theta),
                    ("C".into(), p.c),
                    ("D".into(), p.d),
                    ("epsilon".into(), p.epsilon),
                ]),
            })
        }
        "thm4.3-case3" => {
            p.k = 1.0;
            p.apply_overrides(overrides)?;
            require(p.k == 1.0, "thm4.3-case3 is the k = 1 family")?;
            require(p.epsilon == 1.0, "thm4.3-case3 needs epsilon = +1")?;
            require(p.rho > 0.0, "thm4.3-case3 needs rho > 0 for the chart")?;
            let f3 = format!("{} * exp(-u3)", fmt(p.rho));
            Ok(CatalogEntry {
                name: "thm4.3-case3",
                summary: "parallel sheet (u3, rho e^{-u3}, -u2 e^{-u3}) of the k = 1 space"
                    .into(),
                h: DefiningFunction::homogeneous(1.0, 1.0),
                immersion: immersion(["u1", "u3", &f3, "-u2 * exp(-u3)"])?,
                expected: ExpectedVerdicts::proper_parallel(1.0 / beta),
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (-1.0, 0.6)],
                admissibility: Admissibility::All,
                side_conditions: vec![SideCondition::NormalAngle { theta: 0.0 }],
                implicit: ImplicitSurface::ExpGraph { rho: p.rho },
                notes: String::new(),
                params: BTreeMap::from([("rho".into(), p.rho)]),
            })
        }
        "thm4.3-case4" => {
            p.k = 1.5;
            p.apply_overrides(overrides)?;
            require(p.k != 1.0, "thm4.3-case4 needs k != 1")?;
            require(p.epsilon == 1.0, "thm4.3-case4 needs epsilon = +1")?;
            let f2 = format!("(u3 ^ {}) / {}", fmt(1.0 - p.k), fmt(p.k - 1.0));
            let f4 = format!("-(u2 * u3) / {}", fmt(beta));
            Ok(CatalogEntry {
                name: "thm4.3-case4",
                summary: "parallel power-law sheet of the homogeneous spaces, any k != 1".into(),
                h: DefiningFunction::homogeneous(1.0, p.k),
                immersion: immersion(["u1", &f2, "u3", &f4])?,
                expected: ExpectedVerdicts::proper_parallel(1.0 / beta),
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (0.5, 3.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![SideCondition::NormalAngle { theta: 0.0 }],
                implicit: ImplicitSurface::PowerGraph { k: p.k },
                notes: String::new(),
                params: BTreeMap::from([("k".into(), p.k)]),
            })
        }
        "thm4.3-case5" => {
            p.k = -1.0;
            p.apply_overrides(overrides)?;
            require(p.k == -1.0, "thm4.3-case5 is the k = -1 family")?;
            let f2 = format!("-u3 / {}", fmt(beta));
            let f4 = format!("-(u2 * u3) / {}", fmt(beta));
            Ok(CatalogEntry {
                name: "thm4.3-case5",
                summary: "parallel sheet of the k = -1 space".into(),
                h: DefiningFunction::homogeneous(p.epsilon, -1.0),
                immersion: immersion(["u1", &f2, "u3", &f4])?,
                expected: ExpectedVerdicts::proper_parallel(1.0 / beta),
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (0.5, 3.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![SideCondition::NormalAngle { theta: 0.0 }],
                implicit: ImplicitSurface::Linear {
                    c2: 1.0,
                    c3: 1.0 / beta,
                    c4: 0.0,
                    rhs: 0.0,
                },
                notes: String::new(),
                params: BTreeMap::from([("epsilon".into(), p.epsilon)]),
            })
        }
        "thm4.3-case6" => {
            p.k = 2.0;
            p.apply_overrides(overrides)?;
            require(p.c > 0.0, "thm4.3-case6 needs C > 0 for the chart")?;
            let f3 = fmt(p.c);
            Ok(CatalogEntry {
                name: "thm4.3-case6",
                summary: "parallel slice x3 = C, any homogeneous exponent".into(),
                h: DefiningFunction::homogeneous(p.epsilon, p.k),
                immersion: immersion(["u1", "u3", &f3, "u2"])?,
                expected: ExpectedVerdicts::proper_parallel(1.0 / beta),
                bounds: [(-2.0, 2.0), (-2.0, 2.0), (-2.0, 2.0)],
                admissibility: Admissibility::All,
                side_conditions: vec![
                    SideCondition::Hessian23,
                    SideCondition::MixedHessian34,
                    SideCondition::NormalAngle { theta: 0.0 },
                ],
                implicit: ImplicitSurface::Linear {
                    c2: 0.0,
                    c3: 1.0,
                    c4: 0.0,
                    rhs: p.c,
                },
                notes: String::new(),
                params: BTreeMap::from([
                    ("C".into(), p.c),
                    ("k".into(), p.k),
                    ("epsilon".into(), p.epsilon),
                ]),
            })
        }
        other => Err(GeomError::InvalidParameter(format!(
            "unknown catalog family `{other}`"
        ))),
    }
}

/// The full catalog with default parameters at the given ambient scale.
pub fn catalog_list(beta: f64) -> Vec<CatalogEntry> {
    ENTRY_NAMES
        .iter()
        .map(|name| {
            build_entry(name, beta, &BTreeMap::new(), None, None)
                .expect("default catalog entries are well-formed")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{classify_at, ClassifyOptions};

    #[test]
    fn all_default_entries_build() {
        let entries = catalog_list(1.0);
        assert_eq!(entries.len(), 12);
        for e in &entries {
            let samples = e.draw_samples(5, 1).unwrap();
            assert_eq!(samples.len(), 5);
            for u in &samples {
                assert!(e.admissibility.admits(*u));
            }
        }
    }

    #[test]
    fn preconditions_vanish_on_defaults() {
        for entry in catalog_list(1.0) {
            let geo = entry.geometry(1.0).unwrap();
            let samples = entry.draw_samples(10, 2).unwrap();
            let residuals = entry.check_preconditions(&geo, &samples).unwrap();
            for (name, value) in &residuals {
                assert!(
                    *value < 1e-10,
                    "{}: side condition {} residual {}",
                    entry.name,
                    name,
                    value
                );
            }
        }
    }

    #[test]
    fn geodesic_ode_residual_is_exact_for_matched_pair() {
        // f = e^{u2} against H = x3^2 + x4^2: 2 f'' - H'4 = 2e^{u2} - 2e^{u2}
        let entry = build_entry("thm3.4", 1.0, &BTreeMap::new(), None, None).unwrap();
        let geo = entry.geometry(1.0).unwrap();
        let r = SideCondition::GeodesicOde
            .residual(&geo, &entry.immersion, [0.3, 0.9, 1.7])
            .unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn case6_expected_verdicts() {
        let entry = build_entry(
            "thm4.3-case6",
            1.0,
            &BTreeMap::from([("k".to_string(), 2.0)]),
            None,
            None,
        )
        .unwrap();
        assert_eq!(entry.h.source(), "(1) * x3^(4)");
        assert!(!entry.expected.totally_geodesic);
        assert!(entry.expected.parallel);
        assert_eq!(entry.expected.trace_magnitude, Some(1.0));
    }

    #[test]
    fn classification_matches_expectations_smoke() {
        // a cheap three-entry smoke pass; the full 50-sample sweep lives in
        // the acceptance suite
        for name in ["cor3.5", "thm3.2", "thm4.3-case6"] {
            let entry = build_entry(name, 1.0, &BTreeMap::new(), None, None).unwrap();
            let geo = entry.geometry(1.0).unwrap();
            let samples = entry.draw_samples(8, 3).unwrap();
            let report =
                classify_at(&geo, &entry.immersion, &samples, &ClassifyOptions::default())
                    .unwrap();
            assert!(
                entry.expected.matches(&report),
                "{name}: report {report:?}"
            );
            if let Some(tr) = entry.expected.trace_magnitude {
                assert!(
                    (report.max_abs_trace - tr).abs() < 1e-6,
                    "{name}: |tr h| = {} expected {tr}",
                    report.max_abs_trace
                );
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        let mut bad = BTreeMap::new();
        bad.insert("epsilon".to_string(), 0.5);
        assert!(build_entry("thm4.3-case6", 1.0, &bad, None, None).is_err());

        let mut bad = BTreeMap::new();
        bad.insert("C".to_string(), -1.0);
        assert!(build_entry("thm4.3-case1a", 1.0, &bad, None, None).is_err());

        assert!(build_entry("nonsense", 1.0, &BTreeMap::new(), None, None).is_err());

        let mut eps = BTreeMap::new();
        eps.insert("epsilon".to_string(), -1.0);
        assert!(build_entry("thm4.3-case4", 1.0, &eps, None, None).is_err());
    }

    #[test]
    fn implicit_surfaces_vanish_on_the_image() {
        for entry in catalog_list(1.0) {
            for u in entry.draw_samples(10, 4).unwrap() {
                let p = entry.immersion.point_at(u).unwrap();
                let d = entry.implicit.distance(&p);
                assert!(
                    d < 1e-9,
                    "{}: implicit distance {} at u = {:?}",
                    entry.name,
                    d,
                    u
                );
            }
        }
    }

    #[test]
    fn presets_cover_the_homogeneous_members() {
        assert!(defining_function_preset("kaigorodov", 1.0, None).is_ok());
        assert!(defining_function_preset("defrise", 1.0, None).is_ok());
        assert!(defining_function_preset("ozsvath", 1.0, None).is_ok());
        assert!(defining_function_preset("zero", 1.0, None).is_ok());
        assert!(defining_function_preset("homogeneous", 1.0, Some(0.75)).is_ok());
        assert!(defining_function_preset("homogeneous", 1.0, None).is_err());
        assert!(defining_function_preset("unknown", 1.0, None).is_err());
    }
}
