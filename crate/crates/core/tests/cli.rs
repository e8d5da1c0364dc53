use std::process::Command as Process;

use lieforge::chart::ChartId;
use lieforge::cli::{execute, parse_cli, Command, EXIT_FAIL, EXIT_INVALID, EXIT_PASS};
use lieforge::metric::KPolicy;
use lieforge::report::CSV_HEADER;
use lieforge::scan::ReportFormat;

#[test]
fn metric_command() {
    let Command::Metric(m) = parse_cli(["metric", "--group", "su2", "--chart", "exp", "--point", "0.3,0.4,0.5"]).unwrap() else {
        panic!("expected metric command");
    };
    assert_eq!(m.group, "su2");
    assert_eq!(m.chart, ChartId::Exp);
    assert_eq!(m.point, vec![0.3, 0.4, 0.5]);
    assert_eq!(m.k, KPolicy::Auto);
    assert_eq!(m.format, ReportFormat::Json);
}

#[test]
fn einstein_command() {
    let Command::Einstein(e) = parse_cli(["einstein", "--group", "so4", "--samples", "20", "--tol", "1e-6", "--seed", "42"]).unwrap() else {
        panic!("expected einstein command");
    };
    assert_eq!((e.group.as_str(), e.samples, e.tol, e.seed), ("so4", 20, 1e-6, 42));
    assert_eq!(e.chart, ChartId::Exp);
    assert_eq!(e.k, KPolicy::Auto);
}

#[test]
fn scan_defaults_are_filled() {
    let Command::Scan(s) = parse_cli(["scan", "--groups", "su2,so3", "--out", "report.json"]).unwrap() else {
        panic!("expected scan command");
    };
    let cfg = s.to_config();
    assert_eq!(cfg.groups, vec!["su2", "so3"]);
    assert_eq!(cfg.samples, 20);
    assert_eq!(cfg.tolerance, 1e-6);
    assert_eq!(cfg.seed, 0);
    assert_eq!(cfg.k, KPolicy::Auto);
    assert_eq!(cfg.output.as_deref(), Some(std::path::Path::new("report.json")));
}

#[test]
fn sphere_and_curvature_commands() {
    let Command::Sphere(s) = parse_cli(["sphere", "--dim", "3", "--point", "1.0,-0.5", "--einstein"]).unwrap() else {
        panic!("expected sphere command");
    };
    assert_eq!((s.dim, s.point.as_slice(), s.einstein), (3, &[1.0, -0.5][..], true));
    let Command::Curvature(c) = parse_cli(["curvature", "--group", "su2", "--chart", "euler", "--point", "1,2,3"]).unwrap() else {
        panic!("expected curvature command");
    };
    assert_eq!(c.chart, ChartId::Euler);
    assert_eq!(c.k, KPolicy::Auto);
}

#[test]
fn explicit_k_parses() {
    let Command::Metric(m) = parse_cli(["metric", "--group", "so3", "--chart", "exp", "--point", "0,0,0", "--k", "3.5"]).unwrap() else {
        panic!("expected metric command");
    };
    assert_eq!(m.k, KPolicy::Explicit(3.5));
}

#[test]
fn unknown_flags_and_bad_values_are_rejected_with_usage() {
    for argv in [
        vec!["metric", "--group", "su2", "--chart", "exp", "--point", "0,0,0", "--frobnicate"],
        vec!["metric", "--group", "su2", "--chart", "polar", "--point", "0,0,0"],
        vec!["metric", "--group", "su2", "--chart", "exp", "--point", "0,x,0"],
        vec!["einstein", "--group", "su2", "--k", "-1"],
        vec!["scan", "--format", "xml"],
        vec!["teleport"],
    ] {
        let err = parse_cli(argv.clone()).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{argv:?}");
        let mut out = Vec::new();
        let mut msg = Vec::new();
        assert_eq!(execute(argv.clone(), &mut out, &mut msg), EXIT_INVALID, "{argv:?}");
        let msg = String::from_utf8_lossy(&msg);
        assert!(msg.starts_with("error:"), "{argv:?}");
        if argv.contains(&"--frobnicate") || argv.contains(&"teleport") {
            assert!(msg.contains("Usage"), "{argv:?}");
        }
    }
}

#[test]
fn invalid_inputs_after_parsing_exit_2() {
    for argv in [
        vec!["metric", "--group", "su99", "--chart", "exp", "--point", "0,0,0"],
        vec!["metric", "--group", "su3", "--chart", "euler", "--point", "1,0,0"],
        vec!["metric", "--group", "su2", "--chart", "exp", "--point", "0,0"],
        vec!["einstein", "--group", "su2", "--samples", "0"],
        vec!["scan", "--groups", "su2,xx7"],
        vec!["sphere", "--dim", "3", "--point", "0.0,0.2"],
    ] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(execute(argv.clone(), &mut out, &mut err), EXIT_INVALID, "{argv:?}");
        assert!(String::from_utf8_lossy(&err).starts_with("lieforge: "), "{argv:?}");
    }
}

#[test]
fn einstein_csv_row_for_su2() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = execute(["einstein", "--group", "su2", "--format", "csv"], &mut out, &mut err);
    assert_eq!(code, EXIT_PASS);
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&fields[..2], &["su2", "3"]);
    assert!((fields[2].parse::<f64>().unwrap() - 0.25).abs() < 1e-6);
    assert!(fields[3].parse::<f64>().unwrap() < 1e-5);
    assert!(fields[4].parse::<f64>().unwrap() < 1e-6);
    assert_eq!(fields[5], "pass");
    assert!(fields[6].parse::<f64>().is_ok());
}

#[test]
fn forced_failure_exits_1() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = execute(["einstein", "--group", "so3", "--samples", "3", "--tol", "1e-12"], &mut out, &mut err);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn sphere_output_and_einstein_flag() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = execute(["sphere", "--dim", "4", "--point", "1.0,0.7,0.2", "--einstein", "--samples", "5"], &mut out, &mut err);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["g"].as_array().unwrap().len(), 3);
    assert!((v["einstein"]["lambda_hat"].as_f64().unwrap() - 1.0).abs() < 1e-5);
}

#[test]
fn binary_writes_report_and_rejects_unwritable_path() {
    let bin = env!("CARGO_BIN_EXE_lieforge");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = Process::new(bin)
        .args(["scan", "--groups", "su2", "--samples", "2", "--format", "csv", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with(CSV_HEADER));
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: pass"));

    let out = Process::new(bin)
        .args(["scan", "--groups", "su2", "--samples", "1", "--out"])
        .arg(dir.path().join("missing/dir/report.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("i/o error"));
}
