//! The `lieforge` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::catalog::{GroupSpec, DEFAULT_SCAN_GROUPS};
use crate::chart::ChartId;
use crate::curvature::{riemann_ricci, EinsteinVerdict, GroupMetricField, Stencil};
use crate::embedding::{pullback_metric, sphere_einstein_check, Embedding};
use crate::error::{GeometryError, Result};
use crate::metric::{metric_at, KPolicy, MetricConfig, MetricTensor};
use crate::report::{emit_report, to_json_bytes};
use crate::scan::{run_scan, ReportFormat, ScanConfig, DEFAULT_SAMPLES, DEFAULT_TOLERANCE};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lieforge", version, about = "Trace-form metrics and Einstein checks on compact Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Metric tensor at one chart point.
    Metric(MetricArgs),
    /// Ricci tensor and scalar curvature at one chart point.
    Curvature(CurvatureArgs),
    /// Einstein check of one group at seeded sample points.
    Einstein(EinsteinArgs),
    /// Einstein check across several groups.
    Scan(ScanArgs),
    /// Pullback metric of the unit sphere in R^N.
    Sphere(SphereArgs),
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct MetricArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub chart: ChartId,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub point: Vec<f64>,
    #[arg(long, default_value = "auto")]
    pub k: KPolicy,
    #[arg(long, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct CurvatureArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub chart: ChartId,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub point: Vec<f64>,
    #[arg(long, default_value = "auto")]
    pub k: KPolicy,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct EinsteinArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value = "exp")]
    pub chart: ChartId,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "auto")]
    pub k: KPolicy,
    #[arg(long, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ScanArgs {
    /// Comma-separated group names; defaults to the full catalog scan.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SCAN_GROUPS.map(String::from))]
    pub groups: Vec<String>,
    #[arg(long, default_value = "exp")]
    pub chart: ChartId,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "auto")]
    pub k: KPolicy,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    pub format: ReportFormat,
}

impl ScanArgs {
    pub fn to_config(&self) -> ScanConfig {
        ScanConfig {
            groups: self.groups.clone(),
            chart: self.chart,
            samples: self.samples,
            tolerance: self.tol,
            seed: self.seed,
            k: self.k,
            output: self.out.clone(),
            format: self.format,
            stencil: Stencil::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SphereArgs {
    /// Ambient dimension N of the sphere S^{N-1}.
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub point: Vec<f64>,
    /// Also run the Einstein check at seeded sample points.
    #[arg(long)]
    pub einstein: bool,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses arguments (without the program name).
pub fn parse_cli<I, T>(argv: I) -> std::result::Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("lieforge")).chain(argv.into_iter().map(Into::into));
    Cli::try_parse_from(args).map(|c| c.command)
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn metric_config(group: &str, chart: ChartId, k: KPolicy) -> Result<MetricConfig> {
    let spec: GroupSpec = group.parse()?;
    MetricConfig::new(Arc::new(spec), chart, k)
}

#[derive(Serialize)]
struct MetricOutput<'a> {
    group: &'a str,
    chart: ChartId,
    k: f64,
    point: &'a [f64],
    condition: f64,
    g: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct CurvatureOutput<'a> {
    group: &'a str,
    chart: ChartId,
    k: f64,
    point: &'a [f64],
    g: Vec<Vec<f64>>,
    ricci: Vec<Vec<f64>>,
    scalar_curvature: f64,
    lambda_local: f64,
    einstein_residual: f64,
}

#[derive(Serialize)]
struct SphereOutput<'a> {
    dim: usize,
    point: &'a [f64],
    embedding: Vec<f64>,
    tangency_residual: f64,
    g: Vec<Vec<f64>>,
    einstein: Option<EinsteinVerdict>,
}

fn matrix_text(m: &MetricTensor, format: ReportFormat) -> Vec<u8> {
    let sep = if format == ReportFormat::Csv { "," } else { " " };
    let mut s = String::new();
    for r in m.g.row_iter() {
        let cells: Vec<String> = r
            .iter()
            .map(|v| match format {
                ReportFormat::Csv => format!("{v:e}"),
                _ => format!("{v:>20.14}"),
            })
            .collect();
        s.push_str(&cells.join(sep));
        s.push('\n');
    }
    s.into_bytes()
}

fn write_all(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes).map_err(|e| GeometryError::Io(e.to_string()))
}

/// Executes a parsed command, writing results to `out`. Returns whether
/// every Einstein check in it passed.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Metric(a) => {
            let cfg = metric_config(&a.group, a.chart, a.k)?;
            let m = metric_at(&cfg, &a.point)?;
            let bytes = match a.format {
                ReportFormat::Json => to_json_bytes(&MetricOutput {
                    group: &cfg.group.name,
                    chart: a.chart,
                    k: cfg.resolved_k(),
                    point: &a.point,
                    condition: m.condition,
                    g: rows(&m.g),
                }),
                f => matrix_text(&m, f),
            };
            write_all(out, &bytes)?;
            Ok(true)
        }
        Command::Curvature(a) => {
            let cfg = metric_config(&a.group, a.chart, a.k)?;
            let field = GroupMetricField::new(cfg.clone())?;
            let b = riemann_ricci(&field, &a.point, Stencil::default())?;
            let lambda = b.lambda();
            write_all(
                out,
                &to_json_bytes(&CurvatureOutput {
                    group: &cfg.group.name,
                    chart: a.chart,
                    k: cfg.resolved_k(),
                    point: &a.point,
                    g: rows(&b.metric.g),
                    ricci: rows(&b.ricci),
                    scalar_curvature: b.scalar,
                    lambda_local: lambda,
                    einstein_residual: b.einstein_residual(lambda),
                }),
            )?;
            Ok(true)
        }
        Command::Einstein(a) => {
            let cfg = ScanConfig {
                groups: vec![a.group.clone()],
                chart: a.chart,
                samples: a.samples,
                tolerance: a.tol,
                seed: a.seed,
                k: a.k,
                format: a.format,
                ..ScanConfig::default()
            };
            let report = run_scan(&cfg)?;
            write_all(out, &emit_report(&report, a.format))?;
            Ok(report.pass)
        }
        Command::Scan(a) => {
            let cfg = a.to_config();
            let report = run_scan(&cfg)?;
            let bytes = emit_report(&report, cfg.format);
            match &cfg.output {
                Some(path) => {
                    std::fs::write(path, &bytes)
                        .map_err(|e| GeometryError::Io(format!("{}: {e}", path.display())))?;
                    write_all(out, &emit_report(&report, ReportFormat::Table))?;
                }
                None => write_all(out, &bytes)?,
            }
            Ok(report.pass)
        }
        Command::Sphere(a) => {
            let emb = Embedding::unit(a.dim)?;
            let (x, frame) = emb.evaluate(&a.point)?;
            let g = pullback_metric(&emb, &a.point)?;
            let einstein = if a.einstein {
                Some(sphere_einstein_check(a.dim, a.samples, a.tol, a.seed, Stencil::default())?)
            } else {
                None
            };
            let pass = einstein.as_ref().is_none_or(|v| v.pass);
            write_all(
                out,
                &to_json_bytes(&SphereOutput {
                    dim: a.dim,
                    point: &a.point,
                    tangency_residual: frame.tangency_residual(&x),
                    embedding: x,
                    g: rows(&g.g),
                    einstein,
                }),
            )?;
            Ok(pass)
        }
    }
}

/// Parses and runs, mapping the outcome to a process exit code:
/// 0 pass, 1 Einstein failure, 2 invalid input or I/O error.
pub fn execute<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let command = match parse_cli(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return if code == 0 { EXIT_PASS } else { EXIT_INVALID };
        }
    };
    match run(&command, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "lieforge: {e}");
            EXIT_INVALID
        }
    }
}
