//! Extrinsic geometry of immersed hypersurfaces.
//!
//! An [`Immersion`] maps `(u1, u2, u3)` into the chart. From its order-2
//! jets we assemble the tangent frame, the induced metric, a unit normal,
//! and the second fundamental form through the Gauss formula
//! `nabla_X Y = nabla^M_X Y + h(X,Y) xi`. The covariant derivative of `h`
//! and the curvature of the induced metric are obtained by central finite
//! differences (Richardson-extrapolated once), keeping the jet order at 2.

use crate::ambient::{AmbientGeometry, GeomError, SpacetimePoint};
use crate::expr::{EvalError, Expr, ParseError};
use crate::jets::Jet3;
use crate::linalg;
use rand::{Rng, SeedableRng};

/// Variable names of the immersion parameter context.
pub const U_VARS: [&str; 3] = ["u1", "u2", "u3"];

/// A hypersurface immersion with expression-tree components.
#[derive(Debug, Clone, PartialEq)]
pub struct Immersion {
    components: [Expr; 4],
    sources: [String; 4],
}

impl Immersion {
    pub fn parse(srcs: [&str; 4]) -> Result<Self, ParseError> {
        let parse_one = |s: &str| Expr::parse(s, &U_VARS);
        Ok(Immersion {
            components: [
                parse_one(srcs[0])?,
                parse_one(srcs[1])?,
                parse_one(srcs[2])?,
                parse_one(srcs[3])?,
            ],
            sources: srcs.map(str::to_string),
        })
    }

    pub fn sources(&self) -> [&str; 4] {
        [
            &self.sources[0],
            &self.sources[1],
            &self.sources[2],
            &self.sources[3],
        ]
    }

    /// Order-2 jets of all four components at `u`.
    pub fn jets_at(&self, u: [f64; 3]) -> Result<[Jet3; 4], EvalError> {
        let seeds = [
            Jet3::variable(u[0], 0),
            Jet3::variable(u[1], 1),
            Jet3::variable(u[2], 2),
        ];
        Ok([
            self.components[0].eval_jet(&seeds)?,
            self.components[1].eval_jet(&seeds)?,
            self.components[2].eval_jet(&seeds)?,
            self.components[3].eval_jet(&seeds)?,
        ])
    }

    pub fn point_at(&self, u: [f64; 3]) -> Result<SpacetimePoint, EvalError> {
        let jets = self.jets_at(u)?;
        Ok(SpacetimePoint::new(
            jets[0].value,
            jets[1].value,
            jets[2].value,
            jets[3].value,
        ))
    }
}

/// Frame, induced metric, oriented unit normal and second fundamental form
/// at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct ExtrinsicData {
    pub point: SpacetimePoint,
    /// `frame[a][i]` is the ambient `a`-component of `dF(d/du_i)`.
    pub frame: [[f64; 3]; 4],
    pub induced: [[f64; 3]; 3],
    pub normal: [f64; 4],
    /// Sign of `g(xi, xi)`; `+1` means spacelike normal, i.e. a timelike
    /// hypersurface.
    pub epsilon: f64,
    pub h: [[f64; 3]; 3],
    pub mean_curvature: f64,
}

impl ExtrinsicData {
    pub fn max_abs_h(&self) -> f64 {
        self.h
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }

    pub fn induced_det(&self) -> f64 {
        linalg::det3(&self.induced)
    }
}

/// `(nabla^M h)(d/du_i, d/du_j, d/du_k)` as `t[i][j][k]`.
#[derive(Debug, Clone, Copy)]
pub struct NablaH {
    pub t: [[[f64; 3]; 3]; 3],
}

impl NablaH {
    pub fn max_abs(&self) -> f64 {
        self.t
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }

    /// Worst violation of total symmetry: `max |t_ijk - t_jik|` (the
    /// `(j,k)` symmetry is automatic).
    pub fn max_antisymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    worst = worst.max((self.t[i][j][k] - self.t[j][i][k]).abs());
                }
            }
        }
        worst
    }
}

const NULL_NORMAL_TOL: f64 = 1e-10;
const RANK_TOL: f64 = 1e-12;

/// Extrinsic data with the default orientation rule: the first strictly
/// nonzero normal component in the order `(d3, d4, d1, d2)` is made
/// positive.
pub fn extrinsic_at(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
) -> Result<ExtrinsicData, GeomError> {
    extrinsic_oriented(geo, f, u, None)
}

pub(crate) fn extrinsic_oriented(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
    reference_normal: Option<&[f64; 4]>,
) -> Result<ExtrinsicData, GeomError> {
    let jets = f.jets_at(u)?;
    let point = SpacetimePoint::new(jets[0].value, jets[1].value, jets[2].value, jets[3].value);
    let metric = geo.metric_at(&point)?;

    let mut frame = [[0.0; 3]; 4];
    for a in 0..4 {
        for i in 0..3 {
            frame[a][i] = jets[a].grad[i];
        }
    }

    // immersion condition: the three columns must be linearly independent,
    // judged on Euclid-normalized columns so the test is scale-free
    let mut norms = [0.0f64; 3];
    for i in 0..3 {
        norms[i] = (0..4).map(|a| frame[a][i] * frame[a][i]).sum::<f64>().sqrt();
        if norms[i] == 0.0 {
            return Err(GeomError::RankDeficient { u });
        }
    }
    let mut gram = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] =
                (0..4).map(|a| frame[a][i] * frame[a][j]).sum::<f64>() / (norms[i] * norms[j]);
        }
    }
    if linalg::det3(&gram).abs() < RANK_TOL {
        return Err(GeomError::RankDeficient { u });
    }

    let mut induced = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    s += metric.g[a][b] * frame[a][i] * frame[b][j];
                }
            }
            induced[i][j] = s;
        }
    }

    let mut normal = solve_normal(&frame, &metric.g).ok_or(GeomError::RankDeficient { u })?;
    // Euclid-normalize before judging degeneracy so the threshold is
    // relative to the metric scale only
    let enorm = normal.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in normal.iter_mut() {
        *v /= enorm;
    }
    let gscale = metric
        .g
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let n2 = metric.inner(&normal, &normal);
    if n2.abs() < NULL_NORMAL_TOL * gscale {
        return Err(GeomError::NullNormal { u, norm: n2 });
    }
    let epsilon = n2.signum();
    let scale = n2.abs().sqrt();
    for v in normal.iter_mut() {
        *v /= scale;
    }

    match reference_normal {
        Some(reference) => {
            let dot: f64 = normal.iter().zip(reference).map(|(a, b)| a * b).sum();
            if dot < 0.0 {
                for v in normal.iter_mut() {
                    *v = -*v;
                }
            }
        }
        None => {
            let thresh = 1e-12 * normal.iter().map(|v| v * v).sum::<f64>().sqrt();
            for idx in [2usize, 3, 0, 1] {
                if normal[idx].abs() > thresh {
                    if normal[idx] < 0.0 {
                        for v in normal.iter_mut() {
                            *v = -*v;
                        }
                    }
                    break;
                }
            }
        }
    }

    // Gauss formula: h(X_i, X_j) = eps * g(nabla_{X_i} X_j, xi) with the
    // ambient covariant derivative expanded in coordinates
    let gamma = geo.christoffel_closed(&point)?.gamma;
    let mut h = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut deriv = [0.0; 4];
            for (k, d) in deriv.iter_mut().enumerate() {
                let mut s = jets[k].hess[i][j];
                for a in 0..4 {
                    for b in 0..4 {
                        s += gamma[k][a][b] * frame[a][i] * frame[b][j];
                    }
                }
                *d = s;
            }
            h[i][j] = epsilon * metric.inner(&deriv, &normal);
        }
    }

    let inv_induced = linalg::inv3(&induced).ok_or(GeomError::SingularMetric)?;
    let mut mean = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            mean += inv_induced[i][j] * h[i][j];
        }
    }
    mean /= 3.0;

    Ok(ExtrinsicData {
        point,
        frame,
        induced,
        normal,
        epsilon,
        h,
        mean_curvature: mean,
    })
}

/// Null vector of the 3x4 system `g(xi, frame_i) = 0` by Gauss-Jordan
/// elimination with full pivoting (largest absolute pivot).
fn solve_normal(frame: &[[f64; 3]; 4], g: &[[f64; 4]; 4]) -> Option<[f64; 4]> {
    let mut a = [[0.0; 4]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (l, entry) in row.iter_mut().enumerate() {
            *entry = (0..4).map(|b| frame[b][i] * g[b][l]).sum();
        }
    }
    let mut pivot_cols: [usize; 3] = [usize::MAX; 3];
    for r in 0..3 {
        let mut best = (r, 0usize, 0.0f64);
        for rr in r..3 {
            for cc in 0..4 {
                if pivot_cols[..r].contains(&cc) {
                    continue;
                }
                if a[rr][cc].abs() > best.2 {
                    best = (rr, cc, a[rr][cc].abs());
                }
            }
        }
        if best.2 == 0.0 {
            return None;
        }
        a.swap(r, best.0);
        pivot_cols[r] = best.1;
        let inv = 1.0 / a[r][best.1];
        for c in 0..4 {
            a[r][c] *= inv;
        }
        for rr in 0..3 {
            if rr != r {
                let factor = a[rr][best.1];
                for c in 0..4 {
                    a[rr][c] -= factor * a[r][c];
                }
            }
        }
    }
    let free = (0..4).find(|c| !pivot_cols.contains(c))?;
    let mut xi = [0.0; 4];
    xi[free] = 1.0;
    for r in 0..3 {
        xi[pivot_cols[r]] = -a[r][free];
    }
    Some(xi)
}

fn fd_step(u: f64) -> f64 {
    1e-4 * u.abs().max(1.0)
}

/// Central difference with one Richardson level of a 3x3-matrix-valued map.
fn richardson_matrix<E>(
    mut eval: E,
    u: [f64; 3],
    dir: usize,
    step: f64,
) -> Result<[[f64; 3]; 3], GeomError>
where
    E: FnMut([f64; 3]) -> Result<[[f64; 3]; 3], GeomError>,
{
    let mut central = |s: f64| -> Result<[[f64; 3]; 3], GeomError> {
        let mut up = u;
        let mut um = u;
        up[dir] += s;
        um[dir] -= s;
        let p = eval(up)?;
        let m = eval(um)?;
        let mut d = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                d[i][j] = (p[i][j] - m[i][j]) / (2.0 * s);
            }
        }
        Ok(d)
    };
    let coarse = central(step)?;
    let fine = central(step / 2.0)?;
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
        }
    }
    Ok(out)
}

/// Induced metric alone (no normal needed), for differentiating.
fn induced_metric_at(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
) -> Result<[[f64; 3]; 3], GeomError> {
    let jets = f.jets_at(u)?;
    let point = SpacetimePoint::new(jets[0].value, jets[1].value, jets[2].value, jets[3].value);
    let metric = geo.metric_at(&point)?;
    let mut induced = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    s += metric.g[a][b] * jets[a].grad[i] * jets[b].grad[j];
                }
            }
            induced[i][j] = s;
        }
    }
    Ok(induced)
}

/// Christoffel symbols of the induced metric via the Koszul formula with
/// finite-difference metric derivatives.
fn induced_christoffel(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
    step_scale: f64,
) -> Result<[[[f64; 3]; 3]; 3], GeomError> {
    let induced = induced_metric_at(geo, f, u)?;
    let inv = linalg::inv3(&induced).ok_or(GeomError::SingularMetric)?;
    let mut dg = [[[0.0; 3]; 3]; 3];
    for dir in 0..3 {
        dg[dir] = richardson_matrix(
            |uu| induced_metric_at(geo, f, uu),
            u,
            dir,
            fd_step(u[dir]) * step_scale,
        )?;
    }
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                gamma[k][i][j] = 0.5 * s;
            }
        }
    }
    Ok(gamma)
}

/// Partial derivatives of the second fundamental form components by central
/// differences at the given step scale, orientation pinned to `base`.
pub(crate) fn h_partials(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
    base: &ExtrinsicData,
    step_scale: f64,
) -> Result<[[[f64; 3]; 3]; 3], GeomError> {
    let mut dh = [[[0.0; 3]; 3]; 3];
    for dir in 0..3 {
        dh[dir] = richardson_matrix(
            |uu| Ok(extrinsic_oriented(geo, f, uu, Some(&base.normal))?.h),
            u,
            dir,
            fd_step(u[dir]) * step_scale,
        )?;
    }
    Ok(dh)
}

fn nabla_h_with_base(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
    base: &ExtrinsicData,
) -> Result<NablaH, GeomError> {
    let dh = h_partials(geo, f, u, base, 1.0)?;
    let gamma_m = induced_christoffel(geo, f, u, 1.0)?;
    let mut t = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut v = dh[i][j][k];
                for l in 0..3 {
                    v -= gamma_m[l][i][j] * base.h[l][k] + gamma_m[l][i][k] * base.h[j][l];
                }
                t[i][j][k] = v;
            }
        }
    }
    Ok(NablaH { t })
}

/// Covariant derivative of the second fundamental form at `u`.
pub fn nabla_h(geo: &AmbientGeometry, f: &Immersion, u: [f64; 3]) -> Result<NablaH, GeomError> {
    let base = extrinsic_oriented(geo, f, u, None)?;
    nabla_h_with_base(geo, f, u, &base)
}

/// Curvature of the induced metric from finite differences of its
/// connection; returns the raised tensor `rm[l][i][j][k]` and the induced
/// metric itself.
pub fn induced_riemann(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
) -> Result<([[[[f64; 3]; 3]; 3]; 3], [[f64; 3]; 3]), GeomError> {
    let gamma0 = induced_christoffel(geo, f, u, 1.0)?;
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3]; // [dir][l][j][k]
    for dir in 0..3 {
        // outer step one decade coarser than the inner metric-derivative
        // step keeps the nested differencing noise in check
        let step = fd_step(u[dir]) * 10.0;
        let central = |s: f64| -> Result<[[[f64; 3]; 3]; 3], GeomError> {
            let mut up = u;
            let mut um = u;
            up[dir] += s;
            um[dir] -= s;
            let p = induced_christoffel(geo, f, up, 1.0)?;
            let m = induced_christoffel(geo, f, um, 1.0)?;
            let mut d = [[[0.0; 3]; 3]; 3];
            for l in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        d[l][j][k] = (p[l][j][k] - m[l][j][k]) / (2.0 * s);
                    }
                }
            }
            Ok(d)
        };
        let coarse = central(step)?;
        let fine = central(step / 2.0)?;
        for l in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    dgamma[dir][l][j][k] = (4.0 * fine[l][j][k] - coarse[l][j][k]) / 3.0;
                }
            }
        }
    }
    let mut rm = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut v = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for m in 0..3 {
                        v += gamma0[l][i][m] * gamma0[m][j][k]
                            - gamma0[l][j][m] * gamma0[m][i][k];
                    }
                    rm[l][i][j][k] = v;
                }
            }
        }
    }
    let induced = induced_metric_at(geo, f, u)?;
    Ok((rm, induced))
}

#[derive(Debug, Clone, Copy)]
pub struct GaussCodazzi {
    pub gauss: f64,
    pub codazzi: f64,
}

/// Worst-case residuals of the Gauss and Codazzi equations over all frame
/// index combinations at `u`. These are identities for any immersion, so
/// the residuals measure only numerical differentiation error.
pub fn gauss_codazzi_residuals(
    geo: &AmbientGeometry,
    f: &Immersion,
    u: [f64; 3],
) -> Result<GaussCodazzi, GeomError> {
    let base = extrinsic_oriented(geo, f, u, None)?;
    let t = nabla_h_with_base(geo, f, u, &base)?;
    let (rm, induced) = induced_riemann(geo, f, u)?;

    let metric = geo.metric_at(&base.point)?;
    let ambient_low = geo.riemann_closed(&base.point)?.lower(&metric);

    // g(R(X_i, X_j) X_k, w) for w a frame column or the normal
    let contract = |i: usize, j: usize, k: usize, w: &[f64; 4]| -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        s += ambient_low[d][a][b][c]
                            * base.frame[a][i]
                            * base.frame[b][j]
                            * base.frame[c][k]
                            * w[d];
                    }
                }
            }
        }
        s
    };
    let frame_col = |i: usize| -> [f64; 4] {
        [
            base.frame[0][i],
            base.frame[1][i],
            base.frame[2][i],
            base.frame[3][i],
        ]
    };

    let mut rm_low = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut s = 0.0;
                    for m in 0..3 {
                        s += induced[l][m] * rm[m][i][j][k];
                    }
                    rm_low[l][i][j][k] = s;
                }
            }
        }
    }

    let mut gauss = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let ambient = contract(i, j, k, &frame_col(l));
                    let second = base.epsilon
                        * (base.h[i][k] * base.h[j][l] - base.h[i][l] * base.h[j][k]);
                    gauss = gauss.max((ambient - rm_low[l][i][j][k] - second).abs());
                }
            }
        }
    }

    let mut codazzi = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let ambient = contract(i, j, k, &base.normal);
                let tangential = base.epsilon * (t.t[i][j][k] - t.t[j][i][k]);
                codazzi = codazzi.max((ambient - tangential).abs());
            }
        }
    }

    Ok(GaussCodazzi { gauss, codazzi })
}

/// Uniform sampling box in parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub bounds: [(f64, f64); 3],
    pub count: usize,
    pub seed: u64,
}

impl Sampling {
    pub fn draw(&self) -> Vec<[f64; 3]> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.count)
            .map(|_| {
                let mut u = [0.0; 3];
                for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
                    u[i] = if hi > lo { rng.random_range(lo..hi) } else { lo };
                }
                u
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tol_h: f64,
    pub tol_p: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        // tol_p one order looser: nabla h carries a numerical differentiation
        ClassifyOptions {
            tol_h: 1e-7,
            tol_p: 1e-6,
        }
    }
}

/// Residual maxima and verdicts over a sample set.
#[derive(Debug, Clone, Copy)]
pub struct ClassificationReport {
    pub totally_geodesic: bool,
    pub parallel: bool,
    pub codazzi: bool,
    pub minimal: bool,
    pub cmc: bool,
    pub max_h: f64,
    pub max_nabla_h: f64,
    pub max_codazzi_asym: f64,
    pub max_abs_trace: f64,
    pub trace_mean: f64,
    pub trace_min: f64,
    pub trace_max: f64,
    pub trace_spread: f64,
    /// Normal character at the first sample (`+1` spacelike normal).
    pub epsilon: f64,
    /// Whether epsilon agreed at every sample.
    pub epsilon_uniform: bool,
    /// Largest induced-metric determinant seen (negative throughout for
    /// timelike hypersurfaces).
    pub max_induced_det: f64,
    pub samples_used: usize,
}

/// Classify an immersion over explicit sample points.
pub fn classify_at(
    geo: &AmbientGeometry,
    f: &Immersion,
    points: &[[f64; 3]],
    opts: &ClassifyOptions,
) -> Result<ClassificationReport, GeomError> {
    assert!(!points.is_empty(), "classification needs at least one sample");
    let mut max_h = 0.0f64;
    let mut max_nh = 0.0f64;
    let mut max_asym = 0.0f64;
    let mut trace_min = f64::INFINITY;
    let mut trace_max = f64::NEG_INFINITY;
    let mut trace_sum = 0.0;
    let mut max_abs_trace = 0.0f64;
    let mut epsilon = 0.0;
    let mut epsilon_uniform = true;
    let mut max_det = f64::NEG_INFINITY;

    for &u in points {
        let wrap = |source: GeomError| GeomError::Sample {
            u,
            source: Box::new(source),
        };
        let base = extrinsic_oriented(geo, f, u, None).map_err(wrap)?;
        let t = nabla_h_with_base(geo, f, u, &base).map_err(wrap)?;
        max_h = max_h.max(base.max_abs_h());
        max_nh = max_nh.max(t.max_abs());
        max_asym = max_asym.max(t.max_antisymmetry());
        let tr = base.mean_curvature;
        trace_min = trace_min.min(tr);
        trace_max = trace_max.max(tr);
        trace_sum += tr;
        max_abs_trace = max_abs_trace.max(tr.abs());
        if epsilon == 0.0 {
            epsilon = base.epsilon;
        } else if base.epsilon != epsilon {
            epsilon_uniform = false;
        }
        max_det = max_det.max(base.induced_det());
    }

    let trace_spread = trace_max - trace_min;
    Ok(ClassificationReport {
        totally_geodesic: max_h < opts.tol_h,
        parallel: max_nh < opts.tol_p,
        codazzi: max_asym < opts.tol_p,
        minimal: max_abs_trace < opts.tol_h,
        cmc: trace_spread < opts.tol_h,
        max_h,
        max_nabla_h: max_nh,
        max_codazzi_asym: max_asym,
        max_abs_trace,
        trace_mean: trace_sum / points.len() as f64,
        trace_min,
        trace_max,
        trace_spread,
        epsilon,
        epsilon_uniform,
        max_induced_det: max_det,
        samples_used: points.len(),
    })
}

/// Classify over uniformly drawn samples.
pub fn classify(
    geo: &AmbientGeometry,
    f: &Immersion,
    sampling: &Sampling,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport, GeomError> {
    classify_at(geo, f, &sampling.draw(), opts)
}
