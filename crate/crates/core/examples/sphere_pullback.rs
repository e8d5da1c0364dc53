//! Induced metric on unit spheres in hyperspherical coordinates, and the
//! Einstein check Ric = (N − 2) g on S^{N−1}.

use lieforge::curvature::Stencil;
use lieforge::embedding::{pullback_metric, sphere_einstein_check, Embedding};

fn main() -> lieforge::Result<()> {
    let s2 = Embedding::unit(3)?;
    let (theta, phi) = (1.1, 0.4);
    let (x, frame) = s2.evaluate(&[theta, phi])?;
    let g = pullback_metric(&s2, &[theta, phi])?;
    println!("S² point {x:?}, tangency residual {:.1e}", frame.tangency_residual(&x));
    println!("g = {:.15}sin²θ = {:.15}", g.g, theta.sin().powi(2));

    for n in [3, 4, 5] {
        for step in [1e-3, 2e-3] {
            let v = sphere_einstein_check(n, 20, 1e-6, 0, Stencil::with_step(step))?;
            println!(
                "S^{}: h = {step:e}, Λ̂ = {:.9} (expected {}), residual {:.2e}, {}",
                n - 1,
                v.lambda_hat,
                (n as f64 - 2.0) / 2.0,
                v.residual,
                if v.pass { "pass" } else { "fail" }
            );
        }
    }
    Ok(())
}
