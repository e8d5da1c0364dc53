//! Constant shifts of φ and ψ in the Euler chart leave the metric unchanged.

use std::sync::Arc;

use lieforge::catalog::GroupSpec;
use lieforge::chart::ChartId;
use lieforge::metric::{isometry_residual, EulerShift, KPolicy, MetricConfig};

fn main() -> lieforge::Result<()> {
    let su2 = Arc::new("su2".parse::<GroupSpec>()?);
    let cfg = MetricConfig::new(su2, ChartId::Euler, KPolicy::Auto)?;
    let point = cfg.point(vec![0.9, 0.3, 1.7])?;

    for xi in [0.1, 1.0, 2.5, -4.0] {
        let phi = isometry_residual(&cfg, &point, EulerShift::Phi, xi)?;
        let psi = isometry_residual(&cfg, &point, EulerShift::Psi, xi)?;
        println!("ξ = {xi:>5}: φ-shift residual {phi:.2e}, ψ-shift residual {psi:.2e}");
    }
    Ok(())
}
