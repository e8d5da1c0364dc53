//! Levi-Civita curvature of a black-box metric field by nested central
//! differences, and the Einstein-condition verdict.
//!
//! Metric values come exact from the chart pipeline; first derivatives of
//! `g` and of `Γ` are taken with a 4th-order central stencil plus one
//! Richardson halving.

use nalgebra::DMatrix;
use ndarray::{Array3, Array4};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chart::{safe_domain, ChartId, SafeDomain};
use crate::error::{GeometryError, Result};
use crate::metric::{metric_at, su2_exp_coefficients, MetricConfig, MetricTensor};

/// A metric defined on an open coordinate region.
pub trait MetricField: Sync {
    fn dim(&self) -> usize;
    fn metric(&self, coords: &[f64]) -> Result<MetricTensor>;
    fn contains(&self, coords: &[f64]) -> bool;
    fn label(&self) -> String;
}

/// Trace-form metric of a group chart.
#[derive(Debug, Clone)]
pub struct GroupMetricField {
    pub config: MetricConfig,
    domain: SafeDomain,
}

impl GroupMetricField {
    pub fn new(config: MetricConfig) -> Result<Self> {
        let domain = safe_domain(config.chart, &config.group)?;
        Ok(GroupMetricField { config, domain })
    }

    pub fn domain(&self) -> &SafeDomain {
        &self.domain
    }
}

impl MetricField for GroupMetricField {
    fn dim(&self) -> usize {
        crate::chart::chart_dim(self.config.chart, &self.config.group)
    }
    fn metric(&self, coords: &[f64]) -> Result<MetricTensor> {
        metric_at(&self.config, coords)
    }
    fn contains(&self, coords: &[f64]) -> bool {
        self.domain.contains(coords)
    }
    fn label(&self) -> String {
        format!("{} ({} chart)", self.config.group.name, self.config.chart)
    }
}

/// A constant metric on all of ℝ^d.
#[derive(Debug, Clone)]
pub struct ConstantMetricField {
    pub g: DMatrix<f64>,
}

impl MetricField for ConstantMetricField {
    fn dim(&self) -> usize {
        self.g.nrows()
    }
    fn metric(&self, coords: &[f64]) -> Result<MetricTensor> {
        MetricTensor::new(self.g.clone(), coords.to_vec())
    }
    fn contains(&self, _coords: &[f64]) -> bool {
        true
    }
    fn label(&self) -> String {
        format!("constant metric on R^{}", self.g.nrows())
    }
}

/// Finite-difference stencil settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    pub step: f64,
    /// Combine steps `h` and `h/2` to cancel the leading `h⁴` error term.
    pub richardson: bool,
}

impl Default for Stencil {
    fn default() -> Self {
        Stencil {
            step: 1e-3,
            richardson: true,
        }
    }
}

impl Stencil {
    pub fn with_step(step: f64) -> Self {
        Stencil {
            step,
            ..Stencil::default()
        }
    }

    /// Farthest coordinate offset the stencil touches.
    pub fn reach(&self) -> f64 {
        2.0 * self.step
    }
}

fn central_difference<F>(f: &F, x: &[f64], axis: usize, h: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let at = |offset: f64| {
        let mut p = x.to_vec();
        p[axis] += offset;
        f(&p)
    };
    let (m2, m1, p1, p2) = (at(-2.0 * h)?, at(-h)?, at(h)?, at(2.0 * h)?);
    Ok((0..m2.len())
        .map(|i| (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h))
        .collect())
}

/// Derivative of a vector-valued function along one coordinate axis.
pub fn fd_derivative<F>(f: &F, x: &[f64], axis: usize, stencil: Stencil) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let coarse = central_difference(f, x, axis, stencil.step)?;
    if !stencil.richardson {
        return Ok(coarse);
    }
    let fine = central_difference(f, x, axis, stencil.step / 2.0)?;
    Ok(fine
        .iter()
        .zip(&coarse)
        .map(|(f, c)| (16.0 * f - c) / 15.0)
        .collect())
}

fn guarded_metric(field: &dyn MetricField, coords: &[f64]) -> Result<MetricTensor> {
    if !field.contains(coords) {
        return Err(GeometryError::Domain {
            chart: field.label(),
            at: coords.to_vec(),
        });
    }
    field.metric(coords)
}

/// `∂_e g_ab` stored as `dg[[e, a, b]]`.
pub fn metric_derivatives(field: &dyn MetricField, coords: &[f64], stencil: Stencil) -> Result<Array3<f64>> {
    let d = field.dim();
    if coords.len() != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: coords.len(),
        });
    }
    let flat = |p: &[f64]| guarded_metric(field, p).map(|m| m.g.iter().copied().collect::<Vec<_>>());
    let mut dg = Array3::zeros((d, d, d));
    for e in 0..d {
        let col_major = fd_derivative(&flat, coords, e, stencil)?;
        for b in 0..d {
            for a in 0..d {
                dg[[e, a, b]] = col_major[b * d + a];
            }
        }
    }
    Ok(dg)
}

/// Christoffel symbols of the second kind, `gamma[[c, a, b]] = Γ^c_ab`,
/// together with the metric at the point.
pub fn christoffel(field: &dyn MetricField, coords: &[f64], stencil: Stencil) -> Result<(Array3<f64>, MetricTensor)> {
    let g = guarded_metric(field, coords)?;
    let dg = metric_derivatives(field, coords, stencil)?;
    let d = field.dim();
    let mut gamma = Array3::zeros((d, d, d));
    for c in 0..d {
        for a in 0..d {
            for b in a..d {
                let v: f64 = (0..d)
                    .map(|m| g.g_inv[(c, m)] * (dg[[a, m, b]] + dg[[b, m, a]] - dg[[m, a, b]]))
                    .sum::<f64>()
                    * 0.5;
                gamma[[c, a, b]] = v;
                gamma[[c, b, a]] = v;
            }
        }
    }
    Ok((gamma, g))
}

/// Curvature quantities at one point.
#[derive(Debug, Clone)]
pub struct CurvatureBundle {
    pub coords: Vec<f64>,
    pub metric: MetricTensor,
    /// `Γ^c_ab` at `[[c, a, b]]`.
    pub christoffel: Array3<f64>,
    /// `R^d_cab` at `[[d, c, a, b]]`.
    pub riemann: Array4<f64>,
    pub ricci: DMatrix<f64>,
    pub scalar: f64,
}

impl CurvatureBundle {
    pub fn dim(&self) -> usize {
        self.ricci.nrows()
    }

    pub fn christoffel_symmetry_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    worst = worst.max((self.christoffel[[c, a, b]] - self.christoffel[[c, b, a]]).abs());
                }
            }
        }
        worst
    }

    /// `max |R^d_cab + R^d_cba|`, relative to the largest component.
    pub fn riemann_antisymmetry_residual(&self) -> f64 {
        let d = self.dim();
        let scale = self.riemann.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        let mut worst = 0.0f64;
        for i in 0..d {
            for c in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        worst = worst.max((self.riemann[[i, c, a, b]] + self.riemann[[i, c, b, a]]).abs());
                    }
                }
            }
        }
        worst / scale
    }

    pub fn ricci_symmetry_residual(&self) -> f64 {
        (&self.ricci - self.ricci.transpose()).amax()
    }

    /// `‖Ric − 2Λ g‖_F / ‖g‖_F`.
    pub fn einstein_residual(&self, lambda: f64) -> f64 {
        (&self.ricci - &self.metric.g * (2.0 * lambda)).norm() / self.metric.g.norm()
    }

    /// `‖Ric − ½R g + Λ_field g‖_F / ‖g‖_F`.
    pub fn field_equation_residual(&self, lambda_field: f64) -> f64 {
        (&self.ricci - &self.metric.g * (0.5 * self.scalar) + &self.metric.g * lambda_field).norm()
            / self.metric.g.norm()
    }

    /// Pointwise Einstein constant `R / (2d)`.
    pub fn lambda(&self) -> f64 {
        self.scalar / (2.0 * self.dim() as f64)
    }
}

/// Riemann, Ricci and scalar curvature with the sign convention that makes
/// the unit sphere's Ricci tensor equal to `+g`.
pub fn riemann_ricci(field: &dyn MetricField, coords: &[f64], stencil: Stencil) -> Result<CurvatureBundle> {
    let (gamma, metric) = christoffel(field, coords, stencil)?;
    let d = field.dim();
    let flat = |p: &[f64]| christoffel(field, p, stencil).map(|(g, _)| g.iter().copied().collect::<Vec<_>>());
    // dgamma[[e, c, a, b]] = ∂_e Γ^c_ab
    let mut dgamma = Array4::zeros((d, d, d, d));
    for e in 0..d {
        let v = fd_derivative(&flat, coords, e, stencil)?;
        for (idx, x) in v.into_iter().enumerate() {
            let (c, rest) = (idx / (d * d), idx % (d * d));
            dgamma[[e, c, rest / d, rest % d]] = x;
        }
    }
    let mut riemann = Array4::zeros((d, d, d, d));
    for r in 0..d {
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut v = dgamma[[a, r, b, c]] - dgamma[[b, r, a, c]];
                    for e in 0..d {
                        v += gamma[[r, a, e]] * gamma[[e, b, c]] - gamma[[r, b, e]] * gamma[[e, a, c]];
                    }
                    riemann[[r, c, a, b]] = v;
                }
            }
        }
    }
    let ricci = DMatrix::from_fn(d, d, |a, b| (0..d).map(|c| riemann[[c, a, c, b]]).sum());
    let scalar = metric.g_inv.component_mul(&ricci).sum();
    Ok(CurvatureBundle {
        coords: coords.to_vec(),
        metric,
        christoffel: gamma,
        riemann,
        ricci,
        scalar,
    })
}

/// Where and why a sample failed to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub coords: Vec<f64>,
    pub message: String,
}

/// Outcome of testing `Ric = 2Λ g` over a sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EinsteinVerdict {
    pub dim: usize,
    /// Mean of the per-sample `R / (2d)`.
    pub lambda_hat: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Max over samples of `‖Ric − 2Λ̂ g‖_F / ‖g‖_F`.
    pub residual: f64,
    /// Max over samples of the field-equation residual with `Λ_field = Λ̂(d − 2)`.
    pub field_residual: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub pass: bool,
    pub failure: Option<SampleFailure>,
}

impl EinsteinVerdict {
    pub fn lambda_spread(&self) -> f64 {
        self.lambda_max - self.lambda_min
    }

    /// Cosmological constant of the field-equation form.
    pub fn lambda_field(&self) -> f64 {
        self.lambda_hat * (self.dim as f64 - 2.0)
    }

    fn failed(dim: usize, samples: usize, tolerance: f64, failure: SampleFailure) -> Self {
        EinsteinVerdict {
            dim,
            lambda_hat: f64::NAN,
            lambda_min: f64::NAN,
            lambda_max: f64::NAN,
            residual: f64::NAN,
            field_residual: f64::NAN,
            samples,
            tolerance,
            pass: false,
            failure: Some(failure),
        }
    }
}

/// Aggregates curvature bundles into a verdict. Inputs are combined in the
/// given order, so the result does not depend on how they were computed.
pub fn verdict_from_bundles(bundles: &[CurvatureBundle], dim: usize, tol: f64) -> EinsteinVerdict {
    let lambdas: Vec<f64> = bundles.iter().map(CurvatureBundle::lambda).collect();
    let lambda_hat = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
    let lambda_field = lambda_hat * (dim as f64 - 2.0);
    let residual = bundles
        .iter()
        .map(|b| b.einstein_residual(lambda_hat))
        .fold(0.0, f64::max);
    let field_residual = bundles
        .iter()
        .map(|b| b.field_equation_residual(lambda_field))
        .fold(0.0, f64::max);
    let pass = residual < tol && (dim == 2 || field_residual < tol);
    EinsteinVerdict {
        dim,
        lambda_hat,
        lambda_min: lambdas.iter().copied().fold(f64::INFINITY, f64::min),
        lambda_max: lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        residual,
        field_residual,
        samples: bundles.len(),
        tolerance: tol,
        pass,
        failure: None,
    }
}

/// Tests the Einstein condition at every sample point.
pub fn einstein_check(field: &dyn MetricField, points: &[Vec<f64>], tol: f64, stencil: Stencil) -> Result<EinsteinVerdict> {
    if points.is_empty() {
        return Err(GeometryError::InvalidInput("einstein check needs at least one sample".into()));
    }
    if !(tol > 0.0) {
        return Err(GeometryError::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let d = field.dim();
    let results: Vec<Result<CurvatureBundle>> = points
        .par_iter()
        .map(|p| riemann_ricci(field, p, stencil))
        .collect();
    let mut bundles = Vec::with_capacity(points.len());
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(b) => bundles.push(b),
            Err(e) => {
                return Ok(EinsteinVerdict::failed(
                    d,
                    points.len(),
                    tol,
                    SampleFailure {
                        coords: p.clone(),
                        message: e.to_string(),
                    },
                ))
            }
        }
    }
    Ok(verdict_from_bundles(&bundles, d, tol))
}

/// `∂_c g_ab` of the closed-form SU(2) exp-chart metric at k = 2.
pub fn su2_exp_metric_derivatives(theta: &[f64]) -> Array3<f64> {
    let r = crate::chart::norm(theta);
    let (s, t) = su2_exp_coefficients(r);
    // s = 2(1 − cos r)/r², t = (1 − s)/r²
    let ds = 2.0 * r.sin() / (r * r) - 4.0 * (1.0 - r.cos()) / (r * r * r);
    let dt = -ds / (r * r) - 2.0 * (1.0 - s) / (r * r * r);
    let mut out = Array3::zeros((3, 3, 3));
    for c in 0..3 {
        let rc = theta[c] / r;
        for a in 0..3 {
            for b in 0..3 {
                let kron = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                out[[c, a, b]] = ds * rc * kron(a, b)
                    + dt * rc * theta[a] * theta[b]
                    + t * (kron(a, c) * theta[b] + theta[a] * kron(b, c));
            }
        }
    }
    out
}

/// Largest gap between finite-difference metric derivatives of the SU(2)
/// exp-chart pipeline and the hand-differentiated closed form.
pub fn fd_cross_check(cfg: &MetricConfig, coords: &[f64], stencil: Stencil) -> Result<f64> {
    let g = &cfg.group;
    if cfg.chart != ChartId::Exp || g.family != crate::catalog::Family::SU || g.n != 2 {
        return Err(GeometryError::InvalidInput(
            "fd cross check needs the su2 exp chart".into(),
        ));
    }
    let field = GroupMetricField::new(cfg.clone())?;
    let fd = metric_derivatives(&field, coords, stencil)?;
    let exact = su2_exp_metric_derivatives(coords) * (cfg.resolved_k() / 2.0);
    Ok(fd.iter().zip(exact.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}
