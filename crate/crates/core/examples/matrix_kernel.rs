//! Dual-number matrix exponential: `exp(A(x))` carries its own derivative,
//! checked here against a central difference.

use lieforge::kernel::{mat_exp, pauli, ComplexMatrix, DualComplex, DualComplexMatrix};
use num_complex::Complex64;

fn main() -> lieforge::Result<()> {
    let [s1, _, s3] = pauli();
    let i = Complex64::new(0.0, 1.0);
    let x = 0.7;

    // A(x) = i (x σ1 + 0.3 σ3); dA/dx = i σ1 goes in the single dual slot.
    let a = |x: f64| -> lieforge::Result<ComplexMatrix> { s1.scale(x).add(&s3.scale(0.3)).map(|m| m.scale_complex(i)) };
    let value = a(x)?;
    let slope = s1.scale_complex(i);
    let seeded = DualComplexMatrix::from_fn(2, 2, |r, c| DualComplex::new(*value.get(r, c), [*slope.get(r, c)]));
    let u = mat_exp(&seeded)?;

    let h = 1e-6;
    let fd = mat_exp(&a(x + h)?)?.sub(&mat_exp(&a(x - h)?)?)?.scale(0.5 / h);

    println!("U(x)           = {:?}", u.value());
    println!("dU/dx (dual)   = {:?}", u.partial(0));
    println!("|dual - fd|_F  = {:.3e}", u.partial(0).distance(&fd)?);
    Ok(())
}
