//! Runs the Einstein scan over a list of groups and prints the table and
//! CSV forms of the report.
//!
//! ```text
//! cargo run --release --example conjecture_scan -- su2,so3,sp1
//! ```

use lieforge::catalog::DEFAULT_SCAN_GROUPS;
use lieforge::report::emit_report;
use lieforge::scan::{run_scan, ReportFormat, ScanConfig};

fn main() -> lieforge::Result<()> {
    let groups = match std::env::args().nth(1) {
        Some(list) => list.split(',').map(str::to_string).collect(),
        None => DEFAULT_SCAN_GROUPS.map(String::from).to_vec(),
    };
    let report = run_scan(&ScanConfig {
        groups,
        seed: 1,
        ..ScanConfig::default()
    })?;
    print!("{}", String::from_utf8_lossy(&emit_report(&report, ReportFormat::Table)));
    println!();
    print!("{}", String::from_utf8_lossy(&emit_report(&report, ReportFormat::Csv)));
    Ok(())
}
