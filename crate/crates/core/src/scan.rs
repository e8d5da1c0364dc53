//! Einstein-condition scans across the cataloged groups.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::GroupSpec;
use crate::chart::{chart_dim, norm, ChartId, SafeDomain};
use crate::curvature::{einstein_check, EinsteinVerdict, GroupMetricField, MetricField, Stencil};
use crate::error::{GeometryError, Result};
use crate::metric::{KPolicy, MetricConfig};

pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Sample points whose metric condition exceeds this are redrawn.
pub const MAX_SAMPLE_CONDITION: f64 = 1e8;
/// Euler-chart samples keep `θ` this far from the poles.
pub const EULER_SAMPLE_MARGIN: f64 = 0.3;

const MAX_DRAWS_PER_SAMPLE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for ReportFormat {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "table" => Ok(ReportFormat::Table),
            other => Err(GeometryError::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub groups: Vec<String>,
    pub chart: ChartId,
    pub samples: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub k: KPolicy,
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
    pub stencil: Stencil,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            groups: Vec::new(),
            chart: ChartId::Exp,
            samples: DEFAULT_SAMPLES,
            tolerance: DEFAULT_TOLERANCE,
            seed: 0,
            k: KPolicy::Auto,
            output: None,
            format: ReportFormat::Json,
            stencil: Stencil::default(),
        }
    }
}

impl ScanConfig {
    /// Checks every field and resolves the group names.
    pub fn validate(&self) -> Result<Vec<Arc<GroupSpec>>> {
        if self.samples == 0 {
            return Err(GeometryError::InvalidInput("samples must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(GeometryError::InvalidInput(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        self.groups
            .iter()
            .map(|name| {
                let g: GroupSpec = name.parse()?;
                crate::chart::safe_domain(self.chart, &g)?;
                Ok(Arc::new(g))
            })
            .collect()
    }
}

/// Per-stream RNG so each group's samples do not depend on list order.
fn group_rng(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a
    let stream = name
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `count` sample points uniformly from the chart's sampling box,
/// rejecting points outside the safe domain (with stencil margin) and points
/// whose metric is badly conditioned.
pub fn sample_points(field: &GroupMetricField, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let cfg = &field.config;
    let mut rng = group_rng(seed, &cfg.group.name);
    let d = chart_dim(cfg.chart, &cfg.group);
    let margin = 4.0 * Stencil::default().reach();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        match (cfg.chart, field.domain()) {
            (ChartId::Exp, SafeDomain::Shell { sample_norm, .. }) => {
                let r = sample_norm / (d as f64).sqrt();
                (0..d).map(|_| rng.gen_range(-r..r)).collect()
            }
            _ => {
                let pi = std::f64::consts::PI;
                vec![
                    rng.gen_range(EULER_SAMPLE_MARGIN..pi - EULER_SAMPLE_MARGIN),
                    rng.gen_range(-pi..pi),
                    rng.gen_range(-pi..pi),
                ]
            }
        }
    };
    let accept = |p: &[f64]| -> bool {
        let interior = match field.domain() {
            SafeDomain::Shell {
                min_norm,
                max_norm,
                sample_norm,
            } => {
                let r = norm(p);
                r > min_norm + margin && r < max_norm.min(*sample_norm) - margin
            }
            SafeDomain::Box { .. } => field.contains(p),
        };
        interior
            && field
                .metric(p)
                .map(|m| m.condition <= MAX_SAMPLE_CONDITION)
                .unwrap_or(false)
    };
    let mut points = Vec::with_capacity(count);
    let mut draws = 0;
    while points.len() < count {
        if draws >= count * MAX_DRAWS_PER_SAMPLE {
            return Err(GeometryError::InvalidInput(format!(
                "could not draw {count} admissible points for {}",
                field.label()
            )));
        }
        draws += 1;
        let p = draw(&mut rng);
        if accept(&p) {
            points.push(p);
        }
    }
    Ok(points)
}

/// Einstein check of one group chart at seeded sample points.
pub fn group_einstein_check(cfg: &MetricConfig, samples: usize, tol: f64, seed: u64, stencil: Stencil) -> Result<EinsteinVerdict> {
    let field = GroupMetricField::new(cfg.clone())?;
    let points = sample_points(&field, samples, seed)?;
    einstein_check(&field, &points, tol, stencil)
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub name: String,
    pub dim: usize,
    pub lambda_hat: Option<f64>,
    pub lambda_spread: Option<f64>,
    pub max_residual: Option<f64>,
    pub field_residual: Option<f64>,
    pub pass: bool,
    pub wall_time_ms: f64,
    pub failure: Option<String>,
}

impl GroupReport {
    fn from_verdict(name: &str, dim: usize, v: &EinsteinVerdict, wall_time_ms: f64) -> Self {
        GroupReport {
            name: name.to_string(),
            dim,
            lambda_hat: finite(v.lambda_hat),
            lambda_spread: finite(v.lambda_spread()),
            max_residual: finite(v.residual),
            field_residual: finite(v.field_residual),
            pass: v.pass,
            wall_time_ms,
            failure: v
                .failure
                .as_ref()
                .map(|f| format!("{} at {:?}", f.message, f.coords)),
        }
    }

    fn from_error(name: &str, dim: usize, err: &GeometryError, wall_time_ms: f64) -> Self {
        GroupReport {
            name: name.to_string(),
            dim,
            lambda_hat: None,
            lambda_spread: None,
            max_residual: None,
            field_residual: None,
            pass: false,
            wall_time_ms,
            failure: Some(err.to_string()),
        }
    }
}

/// Echo of the scan settings, stored with every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub groups: Vec<String>,
    pub chart: ChartId,
    pub samples: usize,
    pub tolerance: f64,
    pub k: String,
    pub fd_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub version: String,
    pub seed: u64,
    pub config: ConfigEcho,
    pub groups: Vec<GroupReport>,
    pub pass: bool,
}

impl ScanReport {
    /// Copy with wall-time fields zeroed, for byte comparisons.
    pub fn masked(&self) -> Self {
        let mut r = self.clone();
        for g in &mut r.groups {
            g.wall_time_ms = 0.0;
        }
        r
    }

    pub fn group(&self, name: &str) -> Option<&GroupReport> {
        self.groups.iter().find(|g| g.name == name)
    }
}

/// Runs the Einstein check for every configured group. Unknown groups fail
/// before any computation; numerical failures mark only that group.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let specs = cfg.validate()?;
    let mut groups = Vec::with_capacity(specs.len());
    for spec in specs {
        let start = Instant::now();
        let dim = chart_dim(cfg.chart, &spec);
        let name = spec.name.clone();
        let outcome = MetricConfig::new(spec, cfg.chart, cfg.k)
            .and_then(|mc| group_einstein_check(&mc, cfg.samples, cfg.tolerance, cfg.seed, cfg.stencil));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        groups.push(match outcome {
            Ok(v) => GroupReport::from_verdict(&name, dim, &v, ms),
            Err(e) => GroupReport::from_error(&name, dim, &e, ms),
        });
    }
    let pass = groups.iter().all(|g| g.pass);
    Ok(ScanReport {
        version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
        seed: cfg.seed,
        config: ConfigEcho {
            groups: cfg.groups.clone(),
            chart: cfg.chart,
            samples: cfg.samples,
            tolerance: cfg.tolerance,
            k: cfg.k.to_string(),
            fd_step: cfg.stencil.step,
        },
        groups,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_configs() {
        let base = ScanConfig {
            groups: vec!["su2".into()],
            ..ScanConfig::default()
        };
        assert!(base.validate().is_ok());
        for bad in [
            ScanConfig { samples: 0, ..base.clone() },
            ScanConfig { tolerance: 0.0, ..base.clone() },
            ScanConfig { groups: vec!["su2".into(), "e8".into()], ..base.clone() },
            ScanConfig { groups: vec!["so3".into()], chart: ChartId::Euler, ..base.clone() },
        ] {
            assert!(matches!(run_scan(&bad), Err(GeometryError::InvalidInput(_))));
        }
    }

    #[test]
    fn samples_are_deterministic_and_admissible() {
        let g = Arc::new("so4".parse::<GroupSpec>().unwrap());
        let field = GroupMetricField::new(MetricConfig::new(g, ChartId::Exp, KPolicy::Auto).unwrap()).unwrap();
        let a = sample_points(&field, 10, 5).unwrap();
        assert_eq!(a, sample_points(&field, 10, 5).unwrap());
        assert_ne!(a, sample_points(&field, 10, 6).unwrap());
        assert!(a.iter().all(|p| norm(p) < crate::chart::GENERIC_MAX_NORM && field.contains(p)));
    }

    #[test]
    fn empty_scan_passes_with_no_rows() {
        let r = run_scan(&ScanConfig::default()).unwrap();
        assert!(r.groups.is_empty());
        assert!(r.pass);
    }
}
