//! The same SU(2) elements seen through both charts: matched points give the
//! same scalar curvature R = 3/2.

use std::sync::Arc;

use lieforge::catalog::GroupSpec;
use lieforge::chart::{chart_transition_check, euler_chart, su2_log, ChartId};
use lieforge::curvature::{riemann_ricci, GroupMetricField, Stencil};
use lieforge::metric::{KPolicy, MetricConfig};

fn main() -> lieforge::Result<()> {
    let su2 = Arc::new("su2".parse::<GroupSpec>()?);
    let exp = MetricConfig::new(su2.clone(), ChartId::Exp, KPolicy::Auto)?;
    let euler = MetricConfig::new(su2, ChartId::Euler, KPolicy::Auto)?;
    let exp_field = GroupMetricField::new(exp.clone())?;
    let euler_field = GroupMetricField::new(euler.clone())?;

    println!("{:>22} {:>30} {:>9} {:>14} {:>14}", "euler (θ,φ,ψ)", "exp θ", "|ΔU|", "R euler", "R exp");
    for angles in [[0.5, 0.2, 0.1], [1.3, -0.8, 0.6], [2.2, 1.0, -1.4], [0.9, 2.5, 0.3]] {
        let u = euler_chart(angles[0], angles[1], angles[2]).u;
        let theta = su2_log(&u)?;
        let gap = chart_transition_check(&exp.point(theta.clone())?, &euler.point(angles.to_vec())?)?;
        let r_euler = riemann_ricci(&euler_field, &angles, Stencil::default())?.scalar;
        let r_exp = riemann_ricci(&exp_field, &theta, Stencil::default())?.scalar;
        println!(
            "{:>22} {:>30} {gap:>9.1e} {r_euler:>14.10} {r_exp:>14.10}",
            format!("{angles:.2?}"),
            format!("{theta:.4?}")
        );
    }
    Ok(())
}
