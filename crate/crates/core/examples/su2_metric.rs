//! The SU(2) trace-form metric from the numeric pipeline next to its closed
//! forms in the exponential and Euler-angle charts.

use std::sync::Arc;

use lieforge::catalog::GroupSpec;
use lieforge::chart::ChartId;
use lieforge::metric::{
    closed_form_metric_su2_euler, closed_form_metric_su2_exp, metric_at, KPolicy, MetricConfig,
};

fn main() -> lieforge::Result<()> {
    let su2 = Arc::new("su2".parse::<GroupSpec>()?);

    let exp = MetricConfig::new(su2.clone(), ChartId::Exp, KPolicy::Auto)?;
    let theta = [0.3, -1.1, 0.8];
    let numeric = metric_at(&exp, &theta)?;
    let closed = closed_form_metric_su2_exp(&theta)?;
    println!("exp chart at {theta:?} (k = {})", exp.resolved_k());
    println!("pipeline:{:.12}closed form:{:.12}", numeric.g, closed.g);
    println!("max |difference| = {:.3e}\n", (&numeric.g - &closed.g).amax());

    let euler = MetricConfig::new(su2, ChartId::Euler, KPolicy::Auto)?;
    let (th, phi, psi) = (1.2, 0.4, -2.0);
    let numeric = metric_at(&euler, &[th, phi, psi])?;
    let closed = closed_form_metric_su2_euler(th, phi, psi)?;
    println!("euler chart at (θ, φ, ψ) = ({th}, {phi}, {psi})");
    println!("pipeline:{:.12}closed form:{:.12}", numeric.g, closed.g);
    println!("max |difference| = {:.3e}", (&numeric.g - &closed.g).amax());

    // Line element dθ² + dφ² + dψ² + 2 cos θ dφ dψ.
    let d = [0.1, 0.2, 0.3];
    println!("ds² along {d:?} = {:.15}", numeric.line_element(&d));
    Ok(())
}
