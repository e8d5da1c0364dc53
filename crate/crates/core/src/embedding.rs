//! Pullback metrics on unit spheres `Σ x_i² = 1` in hyperspherical
//! coordinates, evaluated through the same curvature engine as the groups.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::{einstein_check, EinsteinVerdict, MetricField, Stencil};
use crate::error::{GeometryError, Result};
use crate::kernel::DualScalar;
use crate::metric::MetricTensor;

/// Distance kept between polar angles and the poles `0`, `π`.
pub const POLE_MARGIN: f64 = 1e-6;

/// Polar angles drawn for sphere Einstein checks stay in `[m, π − m]`.
pub const SPHERE_SAMPLE_MARGIN: f64 = 0.3;

/// `S^{N−1}` of a given radius inside `ℝ^N`.
///
/// Coordinates are `(θ_1, …, θ_{N−2}, φ)`: polar angles followed by one
/// azimuth, with `x_N = cos θ_1` and `(x_1, x_2)` carrying the azimuth.
/// For `N = 2` the single angle gives `x = (sin t, cos t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Embedding {
    pub ambient: usize,
    pub radius: f64,
}

/// `B[(i, a)] = ∂x_i/∂θ^a`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianFrame {
    pub b: DMatrix<f64>,
}

impl JacobianFrame {
    /// `max_a |Σ_i x_i B_ia|`.
    pub fn tangency_residual(&self, x: &[f64]) -> f64 {
        (0..self.b.ncols())
            .map(|a| (0..x.len()).map(|i| x[i] * self.b[(i, a)]).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }
}

impl Embedding {
    pub fn unit(ambient: usize) -> Result<Self> {
        Self::new(ambient, 1.0)
    }

    pub fn new(ambient: usize, radius: f64) -> Result<Self> {
        if ambient < 2 {
            return Err(GeometryError::InvalidInput(format!(
                "sphere needs ambient dimension >= 2, got {ambient}"
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeometryError::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        Ok(Embedding { ambient, radius })
    }

    pub fn intrinsic(&self) -> usize {
        self.ambient - 1
    }

    fn polar_count(&self) -> usize {
        self.ambient.saturating_sub(2)
    }

    pub fn in_polar_range(&self, theta: &[f64], margin: f64) -> bool {
        theta[..self.polar_count()]
            .iter()
            .all(|&t| t > margin && t < PI - margin)
    }

    fn coordinates(&self, theta: &[DualScalar]) -> Vec<DualScalar> {
        let n = self.ambient;
        let r = self.radius;
        if n == 2 {
            return vec![theta[0].sin().scale(r), theta[0].cos().scale(r)];
        }
        let mut x = vec![DualScalar::constant(0.0); n];
        let mut prefix = DualScalar::constant(r);
        for m in 0..(n - 2) {
            x[n - 1 - m] = prefix.clone() * theta[m].cos();
            prefix = prefix * theta[m].sin();
        }
        let phi = &theta[n - 2];
        x[0] = prefix.clone() * phi.cos();
        x[1] = prefix * phi.sin();
        x
    }

    /// Point on the sphere and its Jacobian frame.
    pub fn evaluate(&self, theta: &[f64]) -> Result<(Vec<f64>, JacobianFrame)> {
        let d = self.intrinsic();
        if theta.len() != d {
            return Err(GeometryError::DimensionMismatch {
                expected: d,
                found: theta.len(),
            });
        }
        if !self.in_polar_range(theta, POLE_MARGIN) {
            return Err(GeometryError::Singular {
                what: "hyperspherical chart",
                at: theta.to_vec(),
                condition: f64::INFINITY,
            });
        }
        let seeded: Vec<DualScalar> = theta
            .iter()
            .enumerate()
            .map(|(a, &t)| DualScalar::variable(t, a, d))
            .collect();
        let x = self.coordinates(&seeded);
        let b = DMatrix::from_fn(self.ambient, d, |i, a| x[i].partial(a));
        Ok((x.iter().map(|xi| xi.value).collect(), JacobianFrame { b }))
    }
}

/// Point and Jacobian of the unit `S^{N−1}`.
pub fn hyperspherical_embedding(ambient: usize, theta: &[f64]) -> Result<(Vec<f64>, JacobianFrame)> {
    Embedding::unit(ambient)?.evaluate(theta)
}

/// `g_ab = Σ_i B_ia B_ib`.
pub fn pullback_metric(emb: &Embedding, theta: &[f64]) -> Result<MetricTensor> {
    let (_, frame) = emb.evaluate(theta)?;
    let g = frame.b.transpose() * &frame.b;
    MetricTensor::new(g, theta.to_vec())
}

/// Pullback metric field of an embedded sphere.
#[derive(Debug, Clone, Copy)]
pub struct SphereField {
    pub embedding: Embedding,
}

impl MetricField for SphereField {
    fn dim(&self) -> usize {
        self.embedding.intrinsic()
    }
    fn metric(&self, coords: &[f64]) -> Result<MetricTensor> {
        pullback_metric(&self.embedding, coords)
    }
    fn contains(&self, coords: &[f64]) -> bool {
        coords.len() == self.dim() && self.embedding.in_polar_range(coords, POLE_MARGIN)
    }
    fn label(&self) -> String {
        format!("S^{}", self.embedding.intrinsic())
    }
}

/// Seeded sample points away from the poles.
pub fn sphere_sample_points(ambient: usize, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polar = ambient.saturating_sub(2);
    (0..samples)
        .map(|_| {
            (0..ambient - 1)
                .map(|a| {
                    if a < polar {
                        rng.gen_range(SPHERE_SAMPLE_MARGIN..PI - SPHERE_SAMPLE_MARGIN)
                    } else {
                        rng.gen_range(-PI..PI)
                    }
                })
                .collect()
        })
        .collect()
}

/// Einstein check of the unit `S^{N−1}`; the expected constant is `(N − 2)/2`.
pub fn sphere_einstein_check(ambient: usize, samples: usize, tol: f64, seed: u64, stencil: Stencil) -> Result<EinsteinVerdict> {
    if ambient < 3 {
        return Err(GeometryError::InvalidInput(format!(
            "sphere Einstein check needs N >= 3, got {ambient}"
        )));
    }
    let field = SphereField {
        embedding: Embedding::unit(ambient)?,
    };
    einstein_check(&field, &sphere_sample_points(ambient, samples, seed), tol, stencil)
}
