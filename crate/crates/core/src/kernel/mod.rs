//! Dense complex matrices, dual scalars, and the matrix exponential.

mod dual;
mod expm;
mod matrix;

pub use dual::{Dual, DualComplex, DualScalar, Partials, INLINE_PARTIALS};
pub use expm::mat_exp;
pub use matrix::{
    mat_adjoint, mat_inverse, mat_mul, mat_transpose, solve, ComplexMatrix, DualComplexMatrix,
    Matrix, Scalar, MAX_INVERSE_CONDITION,
};

use num_complex::Complex64;

/// The Pauli matrices σ1, σ2, σ3.
pub fn pauli() -> [ComplexMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let m = |a, b, c, d| ComplexMatrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2");
    [m(z, one, one, z), m(z, -i, i, z), m(one, z, z, -one)]
}
