//! Metrics `g_ab = k·Re Tr(ω_a† ω_b)` built from the Maurer–Cartan frame
//! `ω_a = U⁻¹ ∂_a U`, plus closed-form SU(2) metrics used as oracles.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::catalog::{hs_inner, GroupSpec};
use crate::chart::{norm, safe_domain, ChartId, ChartPoint, FrameEvaluation, SMALL_ANGLE, SU2_EDGE_MARGIN};
use crate::error::{GeometryError, Result};
use crate::kernel::{mat_inverse, mat_mul, ComplexMatrix};

/// Condition estimate above which a metric counts as degenerate.
pub const MAX_METRIC_CONDITION: f64 = 1e10;

/// Scale factor `k` of the trace form.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum KPolicy {
    /// The unique `k` giving `g(0) = δ` for the group's basis normalization.
    #[default]
    Auto,
    Explicit(f64),
}

impl fmt::Display for KPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPolicy::Auto => f.write_str("auto"),
            KPolicy::Explicit(k) => write!(f, "{k}"),
        }
    }
}

impl From<KPolicy> for String {
    fn from(k: KPolicy) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for KPolicy {
    type Error = GeometryError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for KPolicy {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(KPolicy::Auto);
        }
        match s.parse::<f64>() {
            Ok(k) if k > 0.0 && k.is_finite() => Ok(KPolicy::Explicit(k)),
            _ => Err(GeometryError::InvalidInput(format!(
                "k must be `auto` or a positive real, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricConfig {
    pub k: KPolicy,
    pub chart: ChartId,
    pub group: Arc<GroupSpec>,
}

impl MetricConfig {
    pub fn new(group: Arc<GroupSpec>, chart: ChartId, k: KPolicy) -> Result<Self> {
        safe_domain(chart, &group)?;
        Ok(MetricConfig { k, chart, group })
    }

    pub fn resolved_k(&self) -> f64 {
        match self.k {
            KPolicy::Auto => self.group.auto_k(),
            KPolicy::Explicit(k) => k,
        }
    }

    pub fn point(&self, coords: Vec<f64>) -> Result<ChartPoint> {
        ChartPoint::new(self.chart, self.group.clone(), coords)
    }
}

/// A symmetric positive-definite metric at a point, with its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    pub coords: Vec<f64>,
    /// Ratio of extreme eigenvalues of `g`.
    pub condition: f64,
    /// Largest discarded imaginary part of the trace form (zero for metrics
    /// that are real by construction).
    pub imag_residual: f64,
}

fn condition_of(g: &DMatrix<f64>) -> (f64, f64) {
    let eig = g.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    (min, condition)
}

impl MetricTensor {
    /// Wraps a metric, inverting it numerically.
    pub fn new(g: DMatrix<f64>, coords: Vec<f64>) -> Result<Self> {
        let (_, condition) = condition_of(&g);
        if !(condition <= MAX_METRIC_CONDITION) {
            return Err(GeometryError::Singular {
                what: "metric",
                at: coords,
                condition,
            });
        }
        let g_inv = g.clone().cholesky().map(|c| c.inverse()).ok_or_else(|| {
            GeometryError::Singular {
                what: "metric",
                at: coords.clone(),
                condition,
            }
        })?;
        Ok(MetricTensor {
            g,
            g_inv,
            coords,
            condition,
            imag_residual: 0.0,
        })
    }

    /// Wraps a metric together with an independently known inverse.
    pub fn with_inverse(g: DMatrix<f64>, g_inv: DMatrix<f64>, coords: Vec<f64>) -> Result<Self> {
        let (_, condition) = condition_of(&g);
        if !(condition <= MAX_METRIC_CONDITION) {
            return Err(GeometryError::Singular {
                what: "metric",
                at: coords,
                condition,
            });
        }
        Ok(MetricTensor {
            g,
            g_inv,
            coords,
            condition,
            imag_residual: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `‖g − gᵀ‖_F`.
    pub fn symmetry_residual(&self) -> f64 {
        (&self.g - self.g.transpose()).norm()
    }

    /// `‖g·g⁻¹ − I‖_F`.
    pub fn inverse_residual(&self) -> f64 {
        (&self.g * &self.g_inv - DMatrix::identity(self.dim(), self.dim())).norm()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        condition_of(&self.g).0
    }

    /// `(ds)² = Σ g_ab dθ^a dθ^b`.
    pub fn line_element(&self, d: &[f64]) -> f64 {
        let v = nalgebra::DVector::from_column_slice(d);
        (v.transpose() * &self.g * &v)[(0, 0)]
    }
}

/// `ω_a = U⁻¹ ∂_a U`.
pub fn maurer_cartan(frame: &FrameEvaluation) -> Result<Vec<ComplexMatrix>> {
    let u_inv = mat_inverse(&frame.u)?;
    frame.du.iter().map(|du| mat_mul(&u_inv, du)).collect()
}

/// Trace-form metric `k·Re Tr(ω_a† ω_b)` from a frame.
pub fn metric_from_frame(k: f64, frame: &FrameEvaluation, coords: Vec<f64>) -> Result<MetricTensor> {
    let omega = maurer_cartan(frame).map_err(|e| match e {
        GeometryError::Singular { what, condition, .. } => GeometryError::Singular {
            what,
            at: coords.clone(),
            condition,
        },
        other => other,
    })?;
    let d = omega.len();
    let mut g = DMatrix::zeros(d, d);
    let mut imag = 0.0f64;
    for a in 0..d {
        for b in a..d {
            let t = hs_inner(&omega[a], &omega[b]) * k;
            imag = imag.max(t.im.abs());
            g[(a, b)] = t.re;
            g[(b, a)] = t.re;
        }
    }
    let mut m = MetricTensor::new(g, coords)?;
    m.imag_residual = imag;
    Ok(m)
}

/// Metric at a chart point via the Maurer–Cartan pipeline.
pub fn metric(cfg: &MetricConfig, point: &ChartPoint) -> Result<MetricTensor> {
    if point.chart != cfg.chart || point.group != cfg.group {
        return Err(GeometryError::InvalidInput(format!(
            "point in {} chart of {} does not match config for {} chart of {}",
            point.chart, point.group.name, cfg.chart, cfg.group.name
        )));
    }
    metric_at(cfg, &point.coords)
}

/// Metric at raw chart coordinates.
pub fn metric_at(cfg: &MetricConfig, coords: &[f64]) -> Result<MetricTensor> {
    let frame = crate::chart::evaluate_chart(cfg.chart, &cfg.group, coords)?;
    metric_from_frame(cfg.resolved_k(), &frame, coords.to_vec())
}

/// Coefficients `(s, t)` with `g = s·δ + t·θθᵀ` for the SU(2) exp chart at k = 2.
pub fn su2_exp_coefficients(r: f64) -> (f64, f64) {
    if r < SMALL_ANGLE {
        let r2 = r * r;
        let s = 1.0 - r2 / 12.0 + r2 * r2 / 360.0 - r2 * r2 * r2 / 20160.0;
        let t = 1.0 / 12.0 - r2 / 360.0 + r2 * r2 / 20160.0;
        (s, t)
    } else {
        let s = 4.0 * (r / 2.0).sin().powi(2) / (r * r);
        (s, (1.0 - s) / (r * r))
    }
}

/// Coefficients `(p, q)` with `g⁻¹ = p·δ + q·θθᵀ` for the SU(2) exp chart at k = 2.
pub fn su2_exp_inverse_coefficients(r: f64) -> (f64, f64) {
    if r < SMALL_ANGLE {
        let r2 = r * r;
        let p = 1.0 + r2 / 12.0 + r2 * r2 / 240.0 + r2 * r2 * r2 / 6048.0;
        let q = -(1.0 / 12.0 + r2 / 240.0 + r2 * r2 / 6048.0);
        (p, q)
    } else {
        let p = r * r / (4.0 * (r / 2.0).sin().powi(2));
        (p, (1.0 - p) / (r * r))
    }
}

/// Closed-form SU(2) exp-chart metric and inverse at k = 2.
pub fn closed_form_metric_su2_exp(theta: &[f64]) -> Result<MetricTensor> {
    if theta.len() != 3 {
        return Err(GeometryError::DimensionMismatch {
            expected: 3,
            found: theta.len(),
        });
    }
    let r = norm(theta);
    let (s, t) = su2_exp_coefficients(r);
    if r >= 2.0 * PI - SU2_EDGE_MARGIN {
        return Err(GeometryError::Singular {
            what: "metric",
            at: theta.to_vec(),
            condition: 1.0 / s,
        });
    }
    let (p, q) = su2_exp_inverse_coefficients(r);
    let g = DMatrix::from_fn(3, 3, |a, b| {
        t * theta[a] * theta[b] + if a == b { s } else { 0.0 }
    });
    let g_inv = DMatrix::from_fn(3, 3, |a, b| {
        q * theta[a] * theta[b] + if a == b { p } else { 0.0 }
    });
    MetricTensor::with_inverse(g, g_inv, theta.to_vec())
}

/// Closed-form SU(2) Euler-chart metric and inverse, coordinates `(θ, φ, ψ)`.
pub fn closed_form_metric_su2_euler(theta: f64, phi: f64, psi: f64) -> Result<MetricTensor> {
    let (s, c) = theta.sin_cos();
    let coords = vec![theta, phi, psi];
    if s.abs() <= 1e-6 {
        return Err(GeometryError::Singular {
            what: "metric",
            at: coords,
            condition: f64::INFINITY,
        });
    }
    let g = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, c, 0.0, c, 1.0]);
    let s2 = s * s;
    let g_inv = DMatrix::from_row_slice(
        3,
        3,
        &[1.0, 0.0, 0.0, 0.0, 1.0 / s2, -c / s2, 0.0, -c / s2, 1.0 / s2],
    );
    MetricTensor::with_inverse(g, g_inv, coords)
}

/// Global shifts of the Euler chart that leave the metric unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerShift {
    /// `φ → φ + ξ`
    Phi,
    /// `ψ → ψ + ξ`
    Psi,
}

/// `‖g(shifted point) − g(point)‖_F` for a global Euler-angle shift.
pub fn isometry_residual(cfg: &MetricConfig, point: &ChartPoint, which: EulerShift, xi: f64) -> Result<f64> {
    if cfg.chart != ChartId::Euler || point.chart != ChartId::Euler {
        return Err(GeometryError::InvalidInput(
            "isometry residuals are defined on the euler chart".into(),
        ));
    }
    let mut shifted = point.coords.clone();
    match which {
        EulerShift::Phi => shifted[1] += xi,
        EulerShift::Psi => shifted[2] += xi,
    }
    let before = metric(cfg, point)?;
    let after = metric_at(cfg, &shifted)?;
    Ok((after.g - before.g).norm())
}
