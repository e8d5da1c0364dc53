//! Einstein check of SU(2) in exponential coordinates: Ric = 2Λ g with Λ = 1/4.

use std::sync::Arc;

use lieforge::catalog::GroupSpec;
use lieforge::chart::ChartId;
use lieforge::curvature::{riemann_ricci, GroupMetricField, Stencil};
use lieforge::metric::{KPolicy, MetricConfig};
use lieforge::scan::group_einstein_check;

fn main() -> lieforge::Result<()> {
    let su2 = Arc::new("su2".parse::<GroupSpec>()?);
    let cfg = MetricConfig::new(su2, ChartId::Exp, KPolicy::Auto)?;

    let field = GroupMetricField::new(cfg.clone())?;
    let b = riemann_ricci(&field, &[0.4, 0.1, -0.7], Stencil::default())?;
    println!("Ricci at one point:{:.10}", b.ricci);
    println!("scalar curvature R = {:.10}, local Λ = R/6 = {:.10}", b.scalar, b.lambda());

    let v = group_einstein_check(&cfg, 20, 1e-6, 0, Stencil::default())?;
    println!(
        "\n{} samples: Λ̂ = {:.10} (spread {:.2e}), residual {:.2e}, field-equation residual {:.2e} -> {}",
        v.samples,
        v.lambda_hat,
        v.lambda_spread(),
        v.residual,
        v.field_residual,
        if v.pass { "pass" } else { "fail" }
    );
    Ok(())
}
