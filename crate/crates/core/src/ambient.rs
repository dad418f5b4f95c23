//! Intrinsic geometry of the ambient spacetime.
//!
//! The metric is conformally flat in the chart `x3 > 0`:
//!
//! ```text
//! g = (beta^2/x3^2) (2 dx1 dx2 + H dx2^2 + dx3^2 + dx4^2),   H = H(x2, x3, x4)
//! ```
//!
//! Connection and curvature come in two flavours everywhere: closed-form
//! component tables, and generic numeric paths (Koszul formula, finite
//! differences of the connection). The numeric paths share no code with the
//! closed tables and act as oracles for them.

use crate::expr::{EvalError, Expr, ParseError};
use crate::jets::Jet3;
use crate::linalg;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point off the chart: x3 = {x3} (need x3 > 0)")]
    Chart { x3: f64 },
    #[error("singular metric")]
    SingularMetric,
    #[error("immersion is rank-deficient at u = {u:?}")]
    RankDeficient { u: [f64; 3] },
    #[error("degenerate hypersurface: normal is null at u = {u:?} (g(xi,xi) = {norm})")]
    NullNormal { u: [f64; 3], norm: f64 },
    #[error("geodesic left the chart at t = {t} (x3 = {x3})")]
    ChartExit { t: f64, x3: f64 },
    #[error("invalid integration step dt = {dt} (need dt > 0)")]
    StepError { dt: f64 },
    #[error("sample point u = {u:?} failed: {source}")]
    Sample {
        u: [f64; 3],
        #[source]
        source: Box<GeomError>,
    },
    #[error("sample point u = {u:?} outside the admissible domain")]
    DomainViolation { u: [f64; 3] },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Variable names of the defining-function context.
pub const H_VARS: [&str; 3] = ["x2", "x3", "x4"];

/// A point of the chart. `x3 > 0` is checked by the operations, not here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl SpacetimePoint {
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        SpacetimePoint { x1, x2, x3, x4 }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        SpacetimePoint::new(c[0], c[1], c[2], c[3])
    }
}

/// The defining function `H(x2, x3, x4)` of a metric, evaluable with
/// order-2 jets.
#[derive(Debug, Clone, PartialEq)]
pub struct DefiningFunction {
    expr: Expr,
    text: String,
}

impl DefiningFunction {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        Ok(DefiningFunction {
            expr: Expr::parse(src, &H_VARS)?,
            text: src.to_string(),
        })
    }

    pub fn zero() -> Self {
        DefiningFunction::parse("0").unwrap()
    }

    /// The homogeneous family `H = epsilon * x3^(2k)`.
    pub fn homogeneous(epsilon: f64, k: f64) -> Self {
        DefiningFunction::parse(&format!("({epsilon}) * x3^({})", 2.0 * k)).unwrap()
    }

    pub fn source(&self) -> &str {
        &self.text
    }

    /// Value, gradient and Hessian of H at `(x2, x3, x4)`.
    pub fn jet(&self, x2: f64, x3: f64, x4: f64) -> Result<Jet3, EvalError> {
        self.expr.eval_jet(&[
            Jet3::variable(x2, 0),
            Jet3::variable(x3, 1),
            Jet3::variable(x4, 2),
        ])
    }
}

/// Named first and second partials of H at a point: `grad[0]` of the jet is
/// d/dx2, `grad[1]` is d/dx3, `grad[2]` is d/dx4.
#[derive(Debug, Clone, Copy)]
pub struct HDerivs {
    pub h: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
    pub h22: f64,
    pub h23: f64,
    pub h24: f64,
    pub h33: f64,
    pub h34: f64,
    pub h44: f64,
}

impl From<Jet3> for HDerivs {
    fn from(j: Jet3) -> Self {
        HDerivs {
            h: j.value,
            h2: j.grad[0],
            h3: j.grad[1],
            h4: j.grad[2],
            h22: j.hess[0][0],
            h23: j.hess[0][1],
            h24: j.hess[0][2],
            h33: j.hess[1][1],
            h34: j.hess[1][2],
            h44: j.hess[2][2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub g: [[f64; 4]; 4],
}

impl MetricTensor {
    pub fn inverse(&self) -> Result<[[f64; 4]; 4], GeomError> {
        linalg::inv4(&self.g).ok_or(GeomError::SingularMetric)
    }

    pub fn det(&self) -> f64 {
        linalg::det4(&self.g)
    }

    /// Signature as (negative, positive) eigenvalue counts.
    pub fn signature(&self) -> (usize, usize) {
        let eig = linalg::sym_eigenvalues4(&self.g);
        let neg = eig.iter().filter(|&&e| e < 0.0).count();
        (neg, 4 - neg)
    }

    pub fn inner(&self, u: &[f64; 4], v: &[f64; 4]) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += self.g[i][j] * u[i] * v[j];
            }
        }
        s
    }
}

/// Christoffel symbols; `gamma[k][i][j]` is the `d_k`-component of the
/// covariant derivative of `d_j` along `d_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    pub gamma: [[[f64; 4]; 4]; 4],
}

impl Christoffel {
    pub fn max_abs_diff(&self, other: &Christoffel) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    worst = worst.max((self.gamma[k][i][j] - other.gamma[k][i][j]).abs());
                }
            }
        }
        worst
    }
}

/// Curvature in the convention `R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]`;
/// `r[l][i][j][k]` is the `d_l`-component of `R(d_i, d_j) d_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannTensor {
    pub r: [[[[f64; 4]; 4]; 4]; 4],
}

impl RiemannTensor {
    pub fn max_abs_diff(&self, other: &RiemannTensor) -> f64 {
        let mut worst = 0.0f64;
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        worst =
                            worst.max((self.r[l][i][j][k] - other.r[l][i][j][k]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Fully lowered tensor: `lowered[l][i][j][k] = g(R(d_i,d_j)d_k, d_l)`.
    pub fn lower(&self, metric: &MetricTensor) -> [[[[f64; 4]; 4]; 4]; 4] {
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let mut s = 0.0;
                        for m in 0..4 {
                            s += metric.g[l][m] * self.r[m][i][j][k];
                        }
                        out[l][i][j][k] = s;
                    }
                }
            }
        }
        out
    }

    /// Worst violation of the lowered-tensor symmetries: antisymmetry in the
    /// argument pair, antisymmetry in the value pair, pair exchange, and the
    /// first Bianchi identity.
    pub fn symmetry_residuals(&self, metric: &MetricTensor) -> SymmetryResiduals {
        let low = self.lower(metric);
        let mut res = SymmetryResiduals::default();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        // argument antisymmetry on the raised tensor
                        res.antisym_args = res
                            .antisym_args
                            .max((self.r[l][i][j][k] + self.r[l][j][i][k]).abs());
                        // lowered: R(i,j,k,l) = low[l][i][j][k]
                        res.antisym_values =
                            res.antisym_values.max((low[l][i][j][k] + low[k][i][j][l]).abs());
                        res.pair_exchange =
                            res.pair_exchange.max((low[l][i][j][k] - low[j][k][l][i]).abs());
                        res.bianchi = res.bianchi.max(
                            (low[l][i][j][k] + low[l][j][k][i] + low[l][k][i][j]).abs(),
                        );
                    }
                }
            }
        }
        res
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SymmetryResiduals {
    pub antisym_args: f64,
    pub antisym_values: f64,
    pub pair_exchange: f64,
    pub bianchi: f64,
}

impl SymmetryResiduals {
    pub fn worst(&self) -> f64 {
        self.antisym_args
            .max(self.antisym_values)
            .max(self.pair_exchange)
            .max(self.bianchi)
    }
}

/// The four curvature helper combinations of H.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FHelpers {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

/// Pointwise geometric predicate verdicts with their residual magnitudes.
#[derive(Debug, Clone, Copy)]
pub struct Predicates {
    pub einstein: bool,
    pub conformally_flat: bool,
    pub constant_curvature: bool,
    /// |(2/x3) H'3 - H''33 - H''44|
    pub einstein_residual: f64,
    /// |H''33 - H''44|
    pub conformal_residual: f64,
    /// |H''34|
    pub mixed_residual: f64,
}

pub const DEFAULT_PREDICATE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub t: f64,
    pub position: [f64; 4],
    pub velocity: [f64; 4],
}

/// A Siklos-type ambient space: the conformal scale `beta` and a defining
/// function H.
#[derive(Debug, Clone)]
pub struct AmbientGeometry {
    pub beta: f64,
    pub h: DefiningFunction,
}

impl AmbientGeometry {
    pub fn new(beta: f64, h: DefiningFunction) -> Result<Self, GeomError> {
        if !(beta > 0.0) {
            return Err(GeomError::InvalidParameter(format!(
                "beta must be positive, got {beta}"
            )));
        }
        Ok(AmbientGeometry { beta, h })
    }

    fn check_chart(x3: f64) -> Result<(), GeomError> {
        if x3 > 0.0 {
            Ok(())
        } else {
            Err(GeomError::Chart { x3 })
        }
    }

    pub fn h_at(&self, p: &SpacetimePoint) -> Result<HDerivs, GeomError> {
        Self::check_chart(p.x3)?;
        Ok(self.h.jet(p.x2, p.x3, p.x4)?.into())
    }

    pub fn metric_at(&self, p: &SpacetimePoint) -> Result<MetricTensor, GeomError> {
        let hd = self.h_at(p)?;
        let phi = self.beta * self.beta / (p.x3 * p.x3);
        let mut g = [[0.0; 4]; 4];
        g[0][1] = phi;
        g[1][0] = phi;
        g[1][1] = phi * hd.h;
        g[2][2] = phi;
        g[3][3] = phi;
        Ok(MetricTensor { g })
    }

    /// Metric evaluated at raw coordinates (chart checked).
    pub fn metric_at_coords(&self, x: [f64; 4]) -> Result<MetricTensor, GeomError> {
        self.metric_at(&SpacetimePoint::from_coords(x))
    }

    /// Closed-form connection table.
    pub fn christoffel_closed(&self, p: &SpacetimePoint) -> Result<Christoffel, GeomError> {
        let hd = self.h_at(p)?;
        let x3 = p.x3;
        let mut gamma = [[[0.0; 4]; 4]; 4];
        let mut set = |k: usize, i: usize, j: usize, v: f64| {
            gamma[k][i][j] = v;
            gamma[k][j][i] = v;
        };
        set(2, 0, 1, 1.0 / x3);
        set(0, 0, 2, -1.0 / x3);
        set(0, 1, 1, hd.h2 / 2.0);
        set(2, 1, 1, (2.0 * hd.h - x3 * hd.h3) / (2.0 * x3));
        set(3, 1, 1, -hd.h4 / 2.0);
        set(0, 1, 3, hd.h4 / 2.0);
        set(0, 1, 2, hd.h3 / 2.0);
        set(1, 1, 2, -1.0 / x3);
        set(3, 2, 3, -1.0 / x3);
        set(2, 2, 2, -1.0 / x3);
        set(2, 3, 3, 1.0 / x3);
        Ok(Christoffel { gamma })
    }

    /// Analytic coordinate derivatives of the metric components,
    /// `dg[i][j][k] = d_i g_{jk}`, from the H jet and the explicit
    /// x3-dependence of the conformal factor.
    fn metric_derivatives(&self, p: &SpacetimePoint) -> Result<[[[f64; 4]; 4]; 4], GeomError> {
        let hd = self.h_at(p)?;
        let phi = self.beta * self.beta / (p.x3 * p.x3);
        let dphi = -2.0 * phi / p.x3;
        let mut dg = [[[0.0; 4]; 4]; 4];
        dg[1][1][1] = phi * hd.h2;
        dg[2][0][1] = dphi;
        dg[2][1][0] = dphi;
        dg[2][2][2] = dphi;
        dg[2][3][3] = dphi;
        dg[2][1][1] = dphi * hd.h + phi * hd.h3;
        dg[3][1][1] = phi * hd.h4;
        Ok(dg)
    }

    /// Connection via the Koszul formula; an oracle for
    /// [`AmbientGeometry::christoffel_closed`] sharing none of its code.
    pub fn christoffel_koszul(&self, p: &SpacetimePoint) -> Result<Christoffel, GeomError> {
        let dg = self.metric_derivatives(p)?;
        let ginv = self.metric_at(p)?.inverse()?;
        let mut gamma = [[[0.0; 4]; 4]; 4];
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let mut s = 0.0;
                    for l in 0..4 {
                        s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                    }
                    gamma[k][i][j] = 0.5 * s;
                }
            }
        }
        Ok(Christoffel { gamma })
    }

    /// Closed-form curvature table, completed by antisymmetry in the
    /// argument pair. All other components vanish identically (checked
    /// against the finite-difference path).
    pub fn riemann_closed(&self, p: &SpacetimePoint) -> Result<RiemannTensor, GeomError> {
        let hd = self.h_at(p)?;
        let f = self.f_helpers_from(&hd, p.x3);
        let x3 = p.x3;
        let q = 1.0 / (x3 * x3);
        let mut r = [[[[0.0; 4]; 4]; 4]; 4];
        let mut set = |l: usize, i: usize, j: usize, k: usize, v: f64| {
            r[l][i][j][k] = v;
            r[l][j][i][k] = -v;
        };
        set(0, 0, 1, 0, -q);
        set(0, 0, 1, 1, -hd.h * q);
        set(1, 0, 1, 1, q);
        set(2, 0, 2, 1, q);
        set(0, 0, 2, 2, -q);
        set(3, 0, 3, 1, q);
        set(0, 0, 3, 3, -q);
        set(2, 1, 2, 0, q);
        set(2, 1, 2, 1, f.f1 * q / 2.0);
        set(3, 1, 2, 1, hd.h34 / 2.0);
        set(0, 1, 2, 2, -f.f2 / (2.0 * x3));
        set(1, 1, 2, 2, -q);
        set(0, 1, 2, 3, -hd.h34 / 2.0);
        set(3, 1, 3, 0, q);
        set(2, 1, 3, 1, hd.h34 / 2.0);
        set(3, 1, 3, 1, f.f3 * q / 2.0);
        set(0, 1, 3, 2, -hd.h34 / 2.0);
        set(0, 1, 3, 3, -f.f4 / (2.0 * x3));
        set(1, 1, 3, 3, -q);
        set(3, 2, 3, 2, q);
        set(2, 2, 3, 3, -q);
        Ok(RiemannTensor { r })
    }

    /// Curvature from coordinate derivatives of the connection
    /// (central differences, Richardson-extrapolated once); the independent
    /// oracle for [`AmbientGeometry::riemann_closed`].
    pub fn riemann_from_gamma(&self, p: &SpacetimePoint) -> Result<RiemannTensor, GeomError> {
        let x = p.coords();
        let gamma = self.christoffel_closed(p)?.gamma;
        // dgamma[i][l][j][k] = d_i Gamma^l_{jk}
        let mut dgamma = [[[[0.0; 4]; 4]; 4]; 4];
        for i in 0..4 {
            let h = 1e-4 * x[i].abs().max(1.0);
            let diff = |s: f64| -> Result<[[[f64; 4]; 4]; 4], GeomError> {
                let mut xp = x;
                let mut xm = x;
                xp[i] += s;
                xm[i] -= s;
                let gp = self
                    .christoffel_closed(&SpacetimePoint::from_coords(xp))?
                    .gamma;
                let gm = self
                    .christoffel_closed(&SpacetimePoint::from_coords(xm))?
                    .gamma;
                let mut d = [[[0.0; 4]; 4]; 4];
                for l in 0..4 {
                    for j in 0..4 {
                        for k in 0..4 {
                            d[l][j][k] = (gp[l][j][k] - gm[l][j][k]) / (2.0 * s);
                        }
                    }
                }
                Ok(d)
            };
            let coarse = diff(h)?;
            let fine = diff(h / 2.0)?;
            for l in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        dgamma[i][l][j][k] = (4.0 * fine[l][j][k] - coarse[l][j][k]) / 3.0;
                    }
                }
            }
        }
        let mut r = [[[[0.0; 4]; 4]; 4]; 4];
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let mut v = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                        for m in 0..4 {
                            v += gamma[l][i][m] * gamma[m][j][k]
                                - gamma[l][j][m] * gamma[m][i][k];
                        }
                        r[l][i][j][k] = v;
                    }
                }
            }
        }
        Ok(RiemannTensor { r })
    }

    fn f_helpers_from(&self, hd: &HDerivs, x3: f64) -> FHelpers {
        FHelpers {
            f1: 2.0 * hd.h - x3 * hd.h3 + x3 * x3 * hd.h33,
            f2: x3 * hd.h33 - hd.h3,
            f3: 2.0 * hd.h - x3 * hd.h3 + x3 * x3 * hd.h44,
            f4: x3 * hd.h44 - hd.h3,
        }
    }

    pub fn f_helpers(&self, p: &SpacetimePoint) -> Result<FHelpers, GeomError> {
        let hd = self.h_at(p)?;
        Ok(self.f_helpers_from(&hd, p.x3))
    }

    pub fn predicates(&self, p: &SpacetimePoint, tol: f64) -> Result<Predicates, GeomError> {
        let hd = self.h_at(p)?;
        let einstein_residual = ((2.0 / p.x3) * hd.h3 - hd.h33 - hd.h44).abs();
        let conformal_residual = (hd.h33 - hd.h44).abs();
        let mixed_residual = hd.h34.abs();
        let einstein = einstein_residual < tol;
        let conformally_flat = conformal_residual < tol && mixed_residual < tol;
        Ok(Predicates {
            einstein,
            conformally_flat,
            constant_curvature: einstein && conformally_flat,
            einstein_residual,
            conformal_residual,
            mixed_residual,
        })
    }

    /// Residual of the normal-angle condition
    /// `sin(2 theta) (H''33 - H''44) - 2 cos(2 theta) H''34`.
    pub fn codazzi_angle_residual(
        &self,
        p: &SpacetimePoint,
        theta: f64,
    ) -> Result<f64, GeomError> {
        let hd = self.h_at(p)?;
        Ok((2.0 * theta).sin() * (hd.h33 - hd.h44) - 2.0 * (2.0 * theta).cos() * hd.h34)
    }

    /// Sectional curvature of the plane spanned by `u`, `v` at `p`.
    pub fn sectional_curvature(
        &self,
        p: &SpacetimePoint,
        u: [f64; 4],
        v: [f64; 4],
    ) -> Result<f64, GeomError> {
        let g = self.metric_at(p)?;
        let riem = self.riemann_closed(p)?;
        // g(R(u,v)v, u)
        let mut ruv = [0.0; 4];
        for l in 0..4 {
            let mut s = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        s += riem.r[l][i][j][k] * u[i] * v[j] * v[k];
                    }
                }
            }
            ruv[l] = s;
        }
        let num = g.inner(&ruv, &u);
        let den = g.inner(&u, &u) * g.inner(&v, &v) - g.inner(&u, &v).powi(2);
        if den == 0.0 {
            return Err(GeomError::InvalidParameter(
                "degenerate plane for sectional curvature".into(),
            ));
        }
        Ok(num / den)
    }

    /// Classical fourth-order Runge-Kutta integration of the geodesic
    /// equation; returns the sampled states including the initial one.
    pub fn integrate_geodesic(
        &self,
        p0: &SpacetimePoint,
        v0: [f64; 4],
        t_end: f64,
        dt: f64,
    ) -> Result<Vec<GeodesicState>, GeomError> {
        if !(dt > 0.0) || !t_end.is_finite() || t_end < 0.0 {
            return Err(GeomError::StepError { dt });
        }
        Self::check_chart(p0.x3)?;
        let rhs = |x: [f64; 4], v: [f64; 4], t: f64| -> Result<([f64; 4], [f64; 4]), GeomError> {
            let gamma = self
                .christoffel_closed(&SpacetimePoint::from_coords(x))
                .map_err(|e| match e {
                    GeomError::Chart { x3 } => GeomError::ChartExit { t, x3 },
                    other => other,
                })?
                .gamma;
            let mut acc = [0.0; 4];
            for k in 0..4 {
                let mut s = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        s += gamma[k][i][j] * v[i] * v[j];
                    }
                }
                acc[k] = -s;
            }
            Ok((v, acc))
        };
        let steps = (t_end / dt).round() as usize;
        let mut x = p0.coords();
        let mut v = v0;
        let mut t = 0.0;
        let mut out = Vec::with_capacity(steps + 1);
        out.push(GeodesicState {
            t,
            position: x,
            velocity: v,
        });
        let axpy = |a: [f64; 4], s: f64, b: [f64; 4]| {
            let mut r = a;
            for i in 0..4 {
                r[i] += s * b[i];
            }
            r
        };
        for _ in 0..steps {
            let (k1x, k1v) = rhs(x, v, t)?;
            let (k2x, k2v) = rhs(axpy(x, dt / 2.0, k1x), axpy(v, dt / 2.0, k1v), t)?;
            let (k3x, k3v) = rhs(axpy(x, dt / 2.0, k2x), axpy(v, dt / 2.0, k2v), t)?;
            let (k4x, k4v) = rhs(axpy(x, dt, k3x), axpy(v, dt, k3v), t)?;
            for i in 0..4 {
                x[i] += dt / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
                v[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            }
            t += dt;
            if x[2] <= 0.0 {
                return Err(GeomError::ChartExit { t, x3: x[2] });
            }
            out.push(GeodesicState {
                t,
                position: x,
                velocity: v,
            });
        }
        Ok(out)
    }

    /// g(v, v) at raw coordinates; conserved along geodesics.
    pub fn velocity_norm(&self, x: [f64; 4], v: [f64; 4]) -> Result<f64, GeomError> {
        Ok(self.metric_at_coords(x)?.inner(&v, &v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn geo(src: &str, beta: f64) -> AmbientGeometry {
        AmbientGeometry::new(beta, DefiningFunction::parse(src).unwrap()).unwrap()
    }

    fn random_point(rng: &mut impl Rng) -> SpacetimePoint {
        SpacetimePoint::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(0.5..3.0),
            rng.random_range(-2.0..2.0),
        )
    }

    #[test]
    fn metric_examples() {
        let g0 = geo("0", 1.0);
        let m = g0
            .metric_at(&SpacetimePoint::new(0.0, 0.0, 1.0, 0.0))
            .unwrap();
        assert_eq!(m.g[0][1], 1.0);
        assert_eq!(m.g[2][2], 1.0);
        assert_eq!(m.g[3][3], 1.0);
        assert_eq!(m.g[1][1], 0.0);

        let g4 = geo("x3^4", 1.0);
        let m = g4
            .metric_at(&SpacetimePoint::new(0.0, 0.0, 2.0, 0.0))
            .unwrap();
        assert_eq!(m.g[1][1], 4.0);

        assert!(matches!(
            g4.metric_at(&SpacetimePoint::new(0.0, 0.0, 0.0, 0.0)),
            Err(GeomError::Chart { .. })
        ));
    }

    #[test]
    fn metric_invariants() {
        let g = geo("x3^2 + x2*x4", 1.7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_point(&mut rng);
            let m = g.metric_at(&p).unwrap();
            let phi = g.beta * g.beta / (p.x3 * p.x3);
            let expected_det = -phi.powi(4);
            assert!((m.det() - expected_det).abs() <= 1e-10 * expected_det.abs());
            assert_eq!(m.signature(), (1, 3));
        }
    }

    #[test]
    fn inverse_metric_examples() {
        let g0 = geo("0", 1.0);
        let p = SpacetimePoint::new(0.0, 0.0, 1.0, 0.0);
        let inv = g0.metric_at(&p).unwrap().inverse().unwrap();
        assert!((inv[0][1] - 1.0).abs() < 1e-14);
        assert!(inv[1][1].abs() < 1e-14);

        let g5 = geo("5", 1.0);
        let inv = g5.metric_at(&p).unwrap().inverse().unwrap();
        assert!((inv[0][0] + 5.0).abs() < 1e-12);

        let m = g5.metric_at(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let prod: f64 = (0..4).map(|k| m.g[i][k] * inv[k][j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((prod - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn christoffel_table_entries() {
        let g = geo("x3^2 + x2*x4", 1.0);
        let p = SpacetimePoint::new(0.0, 0.7, 2.0, -0.3);
        let gamma = g.christoffel_closed(&p).unwrap().gamma;
        assert_eq!(gamma[2][0][1], 0.5); // Gamma^3_12 = 1/x3
        assert_eq!(gamma[0][0][2], -0.5); // Gamma^1_13 = -1/x3
        assert_eq!(gamma[0][1][3], p.x2 / 2.0); // Gamma^1_24 = H'4/2 with H'4 = x2

        // H = 0 leaves exactly the constant-curvature components
        let g0 = geo("0", 1.0);
        let gamma = g0.christoffel_closed(&p).unwrap().gamma;
        let mut nonzero = Vec::new();
        for k in 0..4 {
            for i in 0..4 {
                for j in i..4 {
                    if gamma[k][i][j] != 0.0 {
                        nonzero.push((k + 1, i + 1, j + 1));
                    }
                }
            }
        }
        nonzero.sort_unstable();
        assert_eq!(
            nonzero,
            vec![
                (1, 1, 3),
                (2, 2, 3),
                (3, 1, 2),
                (3, 3, 3),
                (3, 4, 4),
                (4, 3, 4)
            ]
        );
    }

    #[test]
    fn koszul_agrees_with_closed() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for src in ["0", "x3^4", "x2*x4", "x3^2*sin(x2)", "x3^(-2)"] {
            let g = geo(src, 1.0);
            for _ in 0..25 {
                let p = random_point(&mut rng);
                let closed = g.christoffel_closed(&p).unwrap();
                let koszul = g.christoffel_koszul(&p).unwrap();
                assert!(
                    closed.max_abs_diff(&koszul) < 1e-9,
                    "H = {src} at {p:?}: diff {}",
                    closed.max_abs_diff(&koszul)
                );
            }
        }
    }

    #[test]
    fn metric_compatibility() {
        // d_i g_jk = Gamma^l_ij g_lk + Gamma^l_ik g_jl, with d_i g by
        // central differences (independent of both connection paths).
        let g = geo("x3^2 + x2*x4", 1.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let p = random_point(&mut rng);
            let gamma = g.christoffel_closed(&p).unwrap().gamma;
            let x = p.coords();
            for i in 0..4 {
                let h = 1e-5 * x[i].abs().max(1.0);
                let mut xp = x;
                let mut xm = x;
                xp[i] += h;
                xm[i] -= h;
                let gp = g.metric_at_coords(xp).unwrap().g;
                let gm = g.metric_at_coords(xm).unwrap().g;
                let gc = g.metric_at(&p).unwrap().g;
                for j in 0..4 {
                    for k in 0..4 {
                        let dg = (gp[j][k] - gm[j][k]) / (2.0 * h);
                        let mut conn = 0.0;
                        for l in 0..4 {
                            conn += gamma[l][i][j] * gc[l][k] + gamma[l][i][k] * gc[j][l];
                        }
                        assert!(
                            (dg - conn).abs() < 1e-7,
                            "compatibility residual {} at ({i},{j},{k})",
                            (dg - conn).abs()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn riemann_closed_examples() {
        let g = geo("x3^4", 1.0);
        let p = SpacetimePoint::new(0.0, 0.0, 1.0, 0.0);
        let r = g.riemann_closed(&p).unwrap().r;
        // R(d1,d2)d1 along d1 is -1/x3^2
        assert_eq!(r[0][0][1][0], -1.0);
        // f1 = 2 - 4 + 12 = 10, so R(d2,d3)d2 along d3 is f1/(2 x3^2) = 5
        assert_eq!(r[2][1][2][1], 5.0);

        let g0 = geo("0", 1.0);
        let r = g0.riemann_closed(&p).unwrap().r;
        assert_eq!(r[2][1][2][1], 0.0);
        assert_eq!(r[3][1][2][1], 0.0);
    }

    #[test]
    fn riemann_oracle_and_symmetries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for src in ["x3^4", "x3^2 + x2*x4", "x3^2*sin(x2)", "exp(x4)*x3"] {
            let g = geo(src, 1.0);
            for _ in 0..20 {
                let p = random_point(&mut rng);
                let closed = g.riemann_closed(&p).unwrap();
                let numeric = g.riemann_from_gamma(&p).unwrap();
                assert!(
                    closed.max_abs_diff(&numeric) < 1e-6,
                    "H = {src}: diff {}",
                    closed.max_abs_diff(&numeric)
                );
                let m = g.metric_at(&p).unwrap();
                assert!(closed.symmetry_residuals(&m).worst() < 1e-9);
                assert!(numeric.symmetry_residuals(&m).worst() < 1e-6);
            }
        }
    }

    #[test]
    fn ads_constant_curvature() {
        let beta = 1.4;
        let g = geo("0", beta);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = random_point(&mut rng);
            let e3 = [0.0, 0.0, 1.0, 0.0];
            let e4 = [0.0, 0.0, 0.0, 1.0];
            let k = g.sectional_curvature(&p, e3, e4).unwrap();
            assert!((k + 1.0 / (beta * beta)).abs() < 1e-10);

            // R(X,Y)Z = -(1/beta^2) (g(Y,Z) X - g(X,Z) Y)
            let m = g.metric_at(&p).unwrap();
            let r = g.riemann_from_gamma(&p).unwrap().r;
            for l in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        for k in 0..4 {
                            let di = if l == i { 1.0 } else { 0.0 };
                            let dj = if l == j { 1.0 } else { 0.0 };
                            let expected =
                                -(m.g[j][k] * di - m.g[i][k] * dj) / (beta * beta);
                            assert!((r[l][i][j][k] - expected).abs() < 1e-6);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_helper_examples() {
        let g = geo("x3^4", 1.0);
        let p = SpacetimePoint::new(0.0, 0.0, 1.0, 0.0);
        let f = g.f_helpers(&p).unwrap();
        assert_eq!((f.f1, f.f2, f.f3, f.f4), (10.0, 8.0, -2.0, -4.0));

        let g0 = geo("0", 1.0);
        let f = g0.f_helpers(&p).unwrap();
        assert_eq!((f.f1, f.f2, f.f3, f.f4), (0.0, 0.0, 0.0, 0.0));

        let g2 = geo("x3^2", 1.0);
        assert_eq!(g2.f_helpers(&p).unwrap().f1, 2.0);
    }

    #[test]
    fn predicate_examples() {
        let tol = DEFAULT_PREDICATE_TOL;
        let p = SpacetimePoint::new(0.0, 0.3, 1.0, -0.4);
        // Kaigorodov-type H = x3^3 is Einstein everywhere
        let k = geo("x3^3", 1.0);
        let pk = k.predicates(&p, tol).unwrap();
        assert!(pk.einstein && pk.einstein_residual < 1e-10);
        assert!(!pk.conformally_flat);

        // H = x3^2 + x4^2 satisfies both conditions
        let cf = geo("x3^2 + x4^2", 1.0);
        let pc = cf.predicates(&p, tol).unwrap();
        assert!(pc.einstein && pc.conformally_flat && pc.constant_curvature);

        // H = x3^2 fails both with residual exactly 2 at x3 = 1
        let h2 = geo("x3^2", 1.0);
        let p2 = h2.predicates(&p, tol).unwrap();
        assert!(!p2.einstein && !p2.conformally_flat);
        assert_eq!(p2.einstein_residual, 2.0);
        assert_eq!(p2.conformal_residual, 2.0);
    }

    #[test]
    fn angle_condition_examples() {
        let p = SpacetimePoint::new(0.0, 0.5, 1.2, -0.8);
        // H''34 = 0 and theta = pi/2: both terms vanish
        let g = geo("x3^2", 1.0);
        let r = g
            .codazzi_angle_residual(&p, std::f64::consts::FRAC_PI_2)
            .unwrap();
        assert!(r.abs() < 1e-15);
        // conformally flat H: zero for any angle
        let cf = geo("x3^2 + x4^2", 1.0);
        assert!(cf.codazzi_angle_residual(&p, 0.7).unwrap().abs() < 1e-15);
        // H = x3^2 at theta = pi/4: sin(pi/2) * 2 = 2
        let r = g
            .codazzi_angle_residual(&p, std::f64::consts::FRAC_PI_4)
            .unwrap();
        assert!((r - 2.0).abs() < 1e-14);
    }

    #[test]
    fn geodesic_norm_conservation() {
        let g = geo("x3^4", 1.0);
        let p0 = SpacetimePoint::new(0.0, 0.0, 1.0, 0.0);
        let v0 = [0.2, 0.1, 0.3, -0.4];
        let traj = g.integrate_geodesic(&p0, v0, 1.0, 1e-3).unwrap();
        assert_eq!(traj.len(), 1001);
        let n0 = g.velocity_norm(p0.coords(), v0).unwrap();
        for s in &traj {
            let n = g.velocity_norm(s.position, s.velocity).unwrap();
            assert!((n - n0).abs() < 1e-6);
        }
    }

    #[test]
    fn geodesic_along_null_direction() {
        // v0 = d1: Gamma^k_11 = 0, so x2, x3, x4 stay constant
        let g = geo("x3^2", 1.0);
        let p0 = SpacetimePoint::new(0.0, 0.5, 2.0, 1.0);
        let traj = g.integrate_geodesic(&p0, [1.0, 0.0, 0.0, 0.0], 1.0, 1e-2).unwrap();
        for s in &traj {
            assert!((s.position[1] - 0.5).abs() < 1e-12);
            assert!((s.position[2] - 2.0).abs() < 1e-12);
            assert!((s.position[3] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_confined_to_hyperplane() {
        // launch tangent to x4 = lambda x2 + mu with H = x3^2
        let g = geo("x3^2", 1.0);
        let (lambda, mu) = (2.0, 1.0);
        let p0 = SpacetimePoint::new(0.3, 0.2, 1.0, lambda * 0.2 + mu);
        let v0 = [0.5, 0.3, -0.2, lambda * 0.3];
        let traj = g.integrate_geodesic(&p0, v0, 1.0, 1e-3).unwrap();
        for s in &traj {
            let dist = (s.position[3] - lambda * s.position[1] - mu).abs();
            assert!(dist < 1e-6, "distance {dist} at t = {}", s.t);
        }
    }

    #[test]
    fn geodesic_step_errors() {
        let g = geo("0", 1.0);
        let p0 = SpacetimePoint::new(0.0, 0.0, 1.0, 0.0);
        assert!(matches!(
            g.integrate_geodesic(&p0, [0.0; 4], 1.0, 0.0),
            Err(GeomError::StepError { .. })
        ));
        // a coarse step overshoots the chart boundary and must be reported
        let out = g.integrate_geodesic(&p0, [0.0, 0.0, -5.0, 0.0], 2.0, 0.5);
        assert!(matches!(out, Err(GeomError::ChartExit { .. })));
    }
}
