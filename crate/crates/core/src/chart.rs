//! Coordinate charts `θ ↦ U(θ)` on the cataloged groups, with first
//! derivatives `∂U/∂θ^a` carried by dual numbers.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{Family, GroupSpec};
use crate::error::{GeometryError, Result};
use crate::kernel::{mat_exp, ComplexMatrix, DualComplex, DualComplexMatrix, DualScalar};

/// Below this norm the exp-chart closed forms switch to Taylor series.
pub const SMALL_ANGLE: f64 = 1e-4;
/// Distance kept from the degenerate shell `|θ| = 2π` of the SU(2) exp chart.
pub const SU2_EDGE_MARGIN: f64 = 1e-2;
/// Sampling radius for the SU(2) exp chart. Curvature residuals stay near
/// 1e-8 out to here and grow quickly as `|θ| → 2π`.
pub const SU2_SAMPLE_NORM: f64 = 5.0;
/// Injectivity budget `|θ| ≤ π/2` for exp charts of the other groups.
pub const GENERIC_MAX_NORM: f64 = PI / 2.0;
/// Distance kept from the Euler-chart poles `θ ∈ {0, π}`.
pub const EULER_POLE_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartId {
    Exp,
    Euler,
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartId::Exp => "exp",
            ChartId::Euler => "euler",
        })
    }
}

impl FromStr for ChartId {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(ChartId::Exp),
            "euler" => Ok(ChartId::Euler),
            other => Err(GeometryError::InvalidInput(format!(
                "unknown chart {other:?} (expected exp or euler)"
            ))),
        }
    }
}

/// Region of a chart where the metric is nondegenerate.
#[derive(Debug, Clone, PartialEq)]
pub enum SafeDomain {
    /// `min_norm < |θ| < max_norm`; random samples are drawn with
    /// `|θ| < sample_norm`.
    Shell {
        min_norm: f64,
        max_norm: f64,
        sample_norm: f64,
    },
    /// Per-coordinate open intervals.
    Box { lower: Vec<f64>, upper: Vec<f64> },
}

impl SafeDomain {
    pub fn contains(&self, coords: &[f64]) -> bool {
        match self {
            SafeDomain::Shell {
                min_norm, max_norm, ..
            } => {
                let r = norm(coords);
                r > *min_norm && r < *max_norm
            }
            SafeDomain::Box { lower, upper } => coords
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(x, (lo, hi))| x > lo && x < hi),
        }
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Validates the chart/group pairing and returns the chart's safe domain.
pub fn safe_domain(chart: ChartId, group: &GroupSpec) -> Result<SafeDomain> {
    match chart {
        ChartId::Exp if is_su2(group) => Ok(SafeDomain::Shell {
            min_norm: SMALL_ANGLE,
            max_norm: 2.0 * PI - SU2_EDGE_MARGIN,
            sample_norm: SU2_SAMPLE_NORM,
        }),
        ChartId::Exp => Ok(SafeDomain::Shell {
            min_norm: SMALL_ANGLE,
            max_norm: GENERIC_MAX_NORM,
            sample_norm: GENERIC_MAX_NORM,
        }),
        ChartId::Euler if is_su2(group) => Ok(SafeDomain::Box {
            lower: vec![EULER_POLE_MARGIN, f64::NEG_INFINITY, f64::NEG_INFINITY],
            upper: vec![PI - EULER_POLE_MARGIN, f64::INFINITY, f64::INFINITY],
        }),
        ChartId::Euler => Err(GeometryError::InvalidInput(format!(
            "the euler chart is only defined for su2, not {}",
            group.name
        ))),
    }
}

fn is_su2(group: &GroupSpec) -> bool {
    group.family == Family::SU && group.n == 2
}

/// Number of coordinates the chart takes on `group`.
pub fn chart_dim(chart: ChartId, group: &GroupSpec) -> usize {
    match chart {
        ChartId::Exp => group.dim,
        ChartId::Euler => 3,
    }
}

/// Coordinates in a named chart.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub coords: Vec<f64>,
    pub group: Arc<GroupSpec>,
    /// Set when the coordinates fall outside the chart's safe domain.
    pub boundary: bool,
}

impl ChartPoint {
    pub fn new(chart: ChartId, group: Arc<GroupSpec>, coords: Vec<f64>) -> Result<Self> {
        let domain = safe_domain(chart, &group)?;
        let expected = chart_dim(chart, &group);
        if coords.len() != expected {
            return Err(GeometryError::DimensionMismatch {
                expected,
                found: coords.len(),
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::InvalidInput("non-finite coordinate".into()));
        }
        let boundary = !domain.contains(&coords);
        Ok(ChartPoint {
            chart,
            coords,
            group,
            boundary,
        })
    }

    pub fn frame(&self) -> Result<FrameEvaluation> {
        evaluate_chart(self.chart, &self.group, &self.coords)
    }
}

/// A group element and its coordinate derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameEvaluation {
    pub u: ComplexMatrix,
    pub du: Vec<ComplexMatrix>,
}

impl FrameEvaluation {
    fn from_dual(m: DualComplexMatrix, directions: usize) -> Self {
        FrameEvaluation {
            u: m.value(),
            du: (0..directions).map(|a| m.partial(a)).collect(),
        }
    }
}

pub fn evaluate_chart(chart: ChartId, group: &GroupSpec, coords: &[f64]) -> Result<FrameEvaluation> {
    match chart {
        ChartId::Exp => exp_chart(group, coords),
        ChartId::Euler => {
            safe_domain(chart, group)?;
            match coords {
                &[theta, phi, psi] => Ok(euler_chart(theta, phi, psi)),
                _ => Err(GeometryError::DimensionMismatch {
                    expected: 3,
                    found: coords.len(),
                }),
            }
        }
    }
}

/// `U = exp(Σ_a θ^a X_a)` with one dual direction per coordinate.
pub fn exp_chart(group: &GroupSpec, coords: &[f64]) -> Result<FrameEvaluation> {
    let d = group.dim;
    if coords.len() != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: coords.len(),
        });
    }
    let n = group.matrix_size;
    let generator = DualComplexMatrix::from_fn(n, n, |r, c| {
        let value = group
            .generators
            .iter()
            .zip(coords)
            .map(|(x, &t)| x.get(r, c) * t)
            .sum();
        DualComplex::new(value, group.generators.iter().map(|x| *x.get(r, c)))
    });
    let mut u = mat_exp(&generator)?;
    u.pad_to(d);
    Ok(FrameEvaluation::from_dual(u, d))
}

fn cis(angle: &DualScalar) -> DualComplex {
    let (s, c) = angle.value.sin_cos();
    DualComplex::new(
        Complex64::new(c, s),
        angle.partials.iter().map(|&p| Complex64::new(-s * p, c * p)),
    )
}

fn real(x: &DualScalar) -> DualComplex {
    DualComplex::new(
        Complex64::new(x.value, 0.0),
        x.partials.iter().map(|&p| Complex64::new(p, 0.0)),
    )
}

/// `U = U_z(φ) U_x(θ) U_z(ψ)` with coordinates ordered `(θ, φ, ψ)`.
pub fn euler_chart(theta: f64, phi: f64, psi: f64) -> FrameEvaluation {
    let t = DualScalar::variable(theta, 0, 3);
    let p = DualScalar::variable(phi, 1, 3);
    let s = DualScalar::variable(psi, 2, 3);
    let half_t = t.scale(0.5);
    let cos_t = real(&half_t.cos());
    let sin_t = real(&half_t.sin());
    let i = DualComplex::constant(Complex64::new(0.0, 1.0));
    let sum = (p.clone() + s.clone()).scale(0.5);
    let diff = (p - s).scale(0.5);
    let entries = [
        [
            cis(&sum) * cos_t.clone(),
            i.clone() * cis(&diff) * sin_t.clone(),
        ],
        [i * cis(&-diff) * sin_t, cis(&-sum) * cos_t],
    ];
    let mut m = DualComplexMatrix::from_fn(2, 2, |r, c| entries[r][c].clone());
    m.pad_to(3);
    FrameEvaluation::from_dual(m, 3)
}

/// Exp-chart coordinates of an SU(2) element, with `|θ| ∈ [0, 2π]`.
pub fn su2_log(u: &ComplexMatrix) -> Result<Vec<f64>> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(GeometryError::InvalidInput("su2_log needs a 2x2 matrix".into()));
    }
    // U = cos(r/2) I + i sin(r/2) n·σ
    let c = u.get(0, 0).re;
    let v = [u.get(0, 1).im, u.get(0, 1).re, u.get(0, 0).im];
    let s = norm(&v);
    if s == 0.0 {
        return Ok(if c > 0.0 {
            vec![0.0; 3]
        } else {
            vec![2.0 * PI, 0.0, 0.0]
        });
    }
    let r = 2.0 * s.atan2(c);
    Ok(v.iter().map(|x| x / s * r).collect())
}

/// Frobenius distance between the group elements of two SU(2) points.
pub fn chart_transition_check(p_exp: &ChartPoint, p_euler: &ChartPoint) -> Result<f64> {
    for p in [p_exp, p_euler] {
        if !is_su2(&p.group) {
            return Err(GeometryError::InvalidInput(format!(
                "chart transition check is defined on su2, not {}",
                p.group.name
            )));
        }
    }
    p_exp.frame()?.u.distance(&p_euler.frame()?.u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_group;
    use crate::kernel::{mat_adjoint, mat_mul, pauli};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn su2() -> Arc<GroupSpec> {
        Arc::new(make_group(Family::SU, 2).unwrap())
    }

    fn rotation_about_sigma1(t: f64) -> ComplexMatrix {
        let [s1, _, _] = pauli();
        ComplexMatrix::identity(2)
            .scale((t / 2.0).cos())
            .add(&s1.scale_complex(Complex64::new(0.0, (t / 2.0).sin())))
            .unwrap()
    }

    #[test]
    fn exp_chart_at_origin_is_identity() {
        let f = exp_chart(&su2(), &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(f.u, ComplexMatrix::identity(2));
    }

    #[test]
    fn exp_chart_matches_closed_form_on_axis() {
        for t in [0.3, 1.0, 2.5, 5.0] {
            let f = exp_chart(&su2(), &[t, 0.0, 0.0]).unwrap();
            assert!(f.u.distance(&rotation_about_sigma1(t)).unwrap() < 1e-14);
        }
    }

    #[test]
    fn exp_chart_rejects_wrong_length() {
        assert!(exp_chart(&su2(), &[1.0, 2.0]).is_err());
    }

    #[test]
    fn euler_chart_special_points() {
        assert!(euler_chart(0.0, 0.0, 0.0)
            .u
            .distance(&ComplexMatrix::identity(2))
            .unwrap()
            < 1e-15);
        let [s1, _, _] = pauli();
        let u = euler_chart(PI, 0.0, 0.0).u;
        assert!(u.distance(&s1.scale_complex(Complex64::new(0.0, 1.0))).unwrap() < 1e-15);
    }

    #[test]
    fn euler_chart_equals_three_factor_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let cis = |a: f64| Complex64::new(a.cos(), a.sin());
        let z = Complex64::new(0.0, 0.0);
        for _ in 0..50 {
            let (t, p, s) = (
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
            );
            let uz = |a: f64| {
                ComplexMatrix::from_rows(vec![vec![cis(a / 2.0), z], vec![z, cis(-a / 2.0)]]).unwrap()
            };
            let c = Complex64::new((t / 2.0).cos(), 0.0);
            let is = Complex64::new(0.0, (t / 2.0).sin());
            let ux = ComplexMatrix::from_rows(vec![vec![c, is], vec![is, c]]).unwrap();
            let product = mat_mul(&mat_mul(&uz(p), &ux).unwrap(), &uz(s)).unwrap();
            assert!(euler_chart(t, p, s).u.distance(&product).unwrap() < 1e-14);
        }
    }

    #[test]
    fn transition_check_on_shared_elements() {
        let g = su2();
        let pt = |chart, c: Vec<f64>| ChartPoint::new(chart, g.clone(), c).unwrap();
        let origin = chart_transition_check(
            &pt(ChartId::Exp, vec![0.0; 3]),
            &pt(ChartId::Euler, vec![0.0; 3]),
        )
        .unwrap();
        assert!(origin < 1e-15);
        for t in [0.4, 1.3, 2.9] {
            let d = chart_transition_check(
                &pt(ChartId::Exp, vec![t, 0.0, 0.0]),
                &pt(ChartId::Euler, vec![t, 0.0, 0.0]),
            )
            .unwrap();
            assert!(d < 1e-14, "{d}");
            // Euler with θ = ψ = 0 is the diagonal factor U_z(φ) = exp(iφσ3/2).
            let d = chart_transition_check(
                &pt(ChartId::Exp, vec![0.0, 0.0, t]),
                &pt(ChartId::Euler, vec![0.0, t, 0.0]),
            )
            .unwrap();
            assert!(d < 1e-14, "{d}");
        }
        let d = chart_transition_check(
            &pt(ChartId::Exp, vec![1.0, 0.0, 0.0]),
            &pt(ChartId::Euler, vec![0.0, 1.0, 0.0]),
        )
        .unwrap();
        assert!(d > 0.1);
    }

    #[test]
    fn su2_log_inverts_exp_chart() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let theta: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            if norm(&theta) > 2.0 * PI - 0.1 {
                continue;
            }
            let u = exp_chart(&su2(), &theta).unwrap().u;
            let back = su2_log(&u).unwrap();
            for (a, b) in theta.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn euler_chart_requires_su2() {
        let so3 = Arc::new(make_group(Family::SO, 3).unwrap());
        assert!(ChartPoint::new(ChartId::Euler, so3, vec![0.1, 0.2, 0.3]).is_err());
    }

    #[test]
    fn boundary_points_are_flagged() {
        let g = su2();
        assert!(ChartPoint::new(ChartId::Exp, g.clone(), vec![0.0; 3]).unwrap().boundary);
        assert!(!ChartPoint::new(ChartId::Exp, g.clone(), vec![1.0, 0.0, 0.0]).unwrap().boundary);
        assert!(ChartPoint::new(ChartId::Euler, g, vec![0.0, 1.0, 1.0]).unwrap().boundary);
    }

    #[test]
    fn frames_are_unitary_with_fd_consistent_derivatives() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for name in ["su2", "su3", "so4", "sp2"] {
            let g: GroupSpec = name.parse().unwrap();
            for _ in 0..5 {
                let theta: Vec<f64> = (0..g.dim).map(|_| rng.gen_range(-0.4..0.4)).collect();
                let f = exp_chart(&g, &theta).unwrap();
                let uu = mat_mul(&mat_adjoint(&f.u), &f.u).unwrap();
                assert!(uu.distance(&ComplexMatrix::identity(g.matrix_size)).unwrap() < 1e-12);
                let h = 1e-4;
                for a in 0..g.dim {
                    let at = |delta: f64| {
                        let mut t = theta.clone();
                        t[a] += delta;
                        exp_chart(&g, &t).unwrap().u
                    };
                    let fd = at(-2.0 * h)
                        .sub(&at(2.0 * h))
                        .unwrap()
                        .add(&at(h).sub(&at(-h)).unwrap().scale(8.0))
                        .unwrap()
                        .scale(1.0 / (12.0 * h));
                    let err = f.du[a].distance(&fd).unwrap() / fd.frobenius_norm();
                    assert!(err < 1e-7, "{name} a={a}: {err}");
                }
            }
        }
    }
}
