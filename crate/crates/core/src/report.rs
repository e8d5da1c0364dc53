//! Serialized forms of a [`ScanReport`]: canonical JSON, flat CSV, and an
//! aligned text table.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{GeometryError, Result};
use crate::scan::{GroupReport, ReportFormat, ScanReport};

/// Pretty JSON whose floats always carry 17 significant digits, so a
/// parse/emit cycle reproduces the bytes exactly.
struct FixedPrecision<'a>(PrettyFormatter<'a>);

impl Formatter for FixedPrecision<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes any value as pretty JSON with 17-significant-digit floats.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedPrecision(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report types serialize infallibly");
    out.push(b'\n');
    out
}

pub fn parse_report_json(bytes: &[u8]) -> Result<ScanReport> {
    serde_json::from_slice(bytes).map_err(|e| GeometryError::InvalidInput(format!("bad report json: {e}")))
}

/// Shortest round-trip text; exponent form for very small or large values.
fn opt(x: Option<f64>) -> String {
    x.map(|v| {
        if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
            v.to_string()
        } else {
            format!("{v:e}")
        }
    })
    .unwrap_or_default()
}

fn status(g: &GroupReport) -> &'static str {
    if g.pass {
        "pass"
    } else {
        "fail"
    }
}

pub const CSV_HEADER: &str = "name,dim,lambda_hat,lambda_spread,max_residual,status,wall_time_ms";

/// One CSV row: `name,dim,lambda_hat,lambda_spread,max_residual,pass|fail,ms`.
pub fn csv_row(g: &GroupReport) -> String {
    format!(
        "{},{},{},{},{},{},{:.0}",
        g.name,
        g.dim,
        opt(g.lambda_hat),
        opt(g.lambda_spread),
        opt(g.max_residual),
        status(g),
        g.wall_time_ms
    )
}

fn table(report: &ScanReport) -> String {
    let mut s = format!(
        "{:<6} {:>4} {:>14} {:>11} {:>11} {:>6} {:>10}\n",
        "group", "dim", "lambda_hat", "spread", "residual", "status", "ms"
    );
    let sci = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
    for g in &report.groups {
        s.push_str(&format!(
            "{:<6} {:>4} {:>14} {:>11} {:>11} {:>6} {:>10.1}\n",
            g.name,
            g.dim,
            g.lambda_hat.map_or_else(|| "-".to_string(), |v| format!("{v:.10}")),
            sci(g.lambda_spread),
            sci(g.max_residual),
            status(g),
            g.wall_time_ms
        ));
        if let Some(f) = &g.failure {
            s.push_str(&format!("       failure: {f}\n"));
        }
    }
    s.push_str(&format!(
        "overall: {} (seed {}, {} samples, tol {:e})\n",
        if report.pass { "pass" } else { "fail" },
        report.seed,
        report.config.samples,
        report.config.tolerance
    ));
    s
}

pub fn emit_report(report: &ScanReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => to_json_bytes(report),
        ReportFormat::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for g in &report.groups {
                s.push_str(&csv_row(g));
                s.push('\n');
            }
            s.into_bytes()
        }
        ReportFormat::Table => table(report).into_bytes(),
    }
}
