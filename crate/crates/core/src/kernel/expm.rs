//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! (Higham 2005). The routine is generic over [`Scalar`], so running it on
//! dual entries propagates first-order derivatives through every step.

use super::matrix::{mat_mul, solve, Matrix, Scalar};
use crate::error::{GeometryError, Result};

/// Largest 1-norm for which the degree-m approximant is accurate to unit
/// roundoff, for m = 3, 5, 7, 9, 13.
const THETA: [(usize, f64); 5] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_230e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
    (13, 5.371_920_351_148_152),
];

/// Squarings beyond this mean the input norm is far outside f64 range for exp.
const MAX_SQUARINGS: i32 = 60;

fn pade_coefficients(m: usize) -> Vec<f64> {
    let mut b = vec![1.0; m + 1];
    for j in 1..=m {
        b[j] = b[j - 1] * (m - j + 1) as f64 / ((2 * m - j + 1) * j) as f64;
    }
    b
}

fn combine<S: Scalar>(terms: &[(f64, &Matrix<S>)]) -> Result<Matrix<S>> {
    let (c0, m0) = terms[0];
    terms[1..]
        .iter()
        .try_fold(m0.scale(c0), |acc, &(c, m)| acc.add(&m.scale(c)))
}

/// Returns `(U, V)` with `exp(A) ≈ (V − U)⁻¹(V + U)`.
fn pade_parts<S: Scalar>(a: &Matrix<S>, m: usize) -> Result<(Matrix<S>, Matrix<S>)> {
    let b = pade_coefficients(m);
    let n = a.rows();
    let ident = Matrix::<S>::identity(n);
    let a2 = mat_mul(a, a)?;
    if m == 13 {
        let a4 = mat_mul(&a2, &a2)?;
        let a6 = mat_mul(&a4, &a2)?;
        let inner_u = combine(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)])?;
        let u = mat_mul(&a6, &inner_u)?
            .add(&combine(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &ident)])?)?;
        let u = mat_mul(a, &u)?;
        let inner_v = combine(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)])?;
        let v = mat_mul(&a6, &inner_v)?
            .add(&combine(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &ident)])?)?;
        return Ok((u, v));
    }
    // Even powers I, A², A⁴, ... up to A^(m-1).
    let mut powers = vec![ident, a2];
    while powers.len() <= m / 2 {
        let next = mat_mul(&powers[powers.len() - 1], &powers[1])?;
        powers.push(next);
    }
    let odd: Vec<(f64, &Matrix<S>)> = (0..=m / 2).map(|k| (b[2 * k + 1], &powers[k])).collect();
    let even: Vec<(f64, &Matrix<S>)> = (0..=m / 2).map(|k| (b[2 * k], &powers[k])).collect();
    let u = mat_mul(a, &combine(&odd)?)?;
    let v = combine(&even)?;
    Ok((u, v))
}

/// Matrix exponential. Degree and scaling are chosen from the 1-norm of the
/// value part; dual partial slots ride along through the same arithmetic.
pub fn mat_exp<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    if !a.is_square() {
        return Err(GeometryError::InvalidInput(format!(
            "exp needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(GeometryError::InvalidInput("non-finite matrix entry".into()));
    }
    let norm = a.norm1();
    let (degree, squarings) = match THETA.iter().find(|(_, theta)| norm <= *theta) {
        Some(&(m, _)) => (m, 0),
        None => {
            let s = (norm / THETA[4].1).log2().ceil() as i32;
            if s > MAX_SQUARINGS {
                return Err(GeometryError::NumericRange(format!(
                    "matrix norm {norm:e} exceeds the scaling budget"
                )));
            }
            (13, s.max(0))
        }
    };
    let scaled = a.scale(0.5f64.powi(squarings));
    let (u, v) = pade_parts(&scaled, degree)?;
    let mut r = solve(&v.sub(&u)?, &v.add(&u)?)?;
    for _ in 0..squarings {
        r = mat_mul(&r, &r)?;
    }
    if !r.is_finite() {
        return Err(GeometryError::NumericRange("exp overflowed".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{pauli, ComplexMatrix, DualComplex, DualComplexMatrix};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Reference exponential by plain Taylor series with repeated squaring.
    fn taylor_exp(a: &ComplexMatrix) -> ComplexMatrix {
        let s = 8;
        let scaled = a.scale(0.5f64.powi(s));
        let mut term = ComplexMatrix::identity(a.rows());
        let mut sum = term.clone();
        for k in 1..30 {
            term = mat_mul(&term, &scaled).unwrap().scale(1.0 / k as f64);
            sum = sum.add(&term).unwrap();
        }
        for _ in 0..s {
            sum = mat_mul(&sum, &sum).unwrap();
        }
        sum
    }

    fn random_anti_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
        let h = ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
        });
        h.sub(&crate::kernel::mat_adjoint(&h)).unwrap().scale(0.5)
    }

    #[test]
    fn pade_coefficients_match_higham_table() {
        let b = pade_coefficients(13);
        // b_j / b_0 from the published degree-13 table.
        let table = [
            64764752532480000.0,
            32382376266240000.0,
            7771770303897600.0,
            1187353796428800.0,
            129060195264000.0,
        ];
        for (j, t) in table.iter().enumerate() {
            assert!((b[j] - t / table[0]).abs() < 1e-16);
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = mat_exp(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(3));
    }

    #[test]
    fn half_turn_about_sigma1() {
        // exp((i/2)σ1·π) = cos(π/2)I + i sin(π/2)σ1 = iσ1
        let [s1, _, _] = pauli();
        let e = mat_exp(&s1.scale_complex(c(0.0, std::f64::consts::PI / 2.0))).unwrap();
        let expected = s1.scale_complex(c(0.0, 1.0));
        assert!(e.distance(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn agrees_with_taylor_reference_across_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for scale in [1e-3, 0.05, 0.3, 1.0, 2.5, 6.0, 40.0] {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale / 4.0
            });
            let e = mat_exp(&a).unwrap();
            let r = taylor_exp(&a);
            let rel = e.distance(&r).unwrap() / r.frobenius_norm();
            assert!(rel < 1e-12, "scale {scale}: {rel}");
        }
    }

    #[test]
    fn anti_hermitian_exponentiates_to_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_anti_hermitian(&mut rng, 4, 3.0);
            let u = mat_exp(&a).unwrap();
            let uu = mat_mul(&crate::kernel::mat_adjoint(&u), &u).unwrap();
            assert!(uu.distance(&ComplexMatrix::identity(4)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn huge_norm_is_a_range_error() {
        let a = ComplexMatrix::identity(2).scale(1e30);
        assert!(matches!(mat_exp(&a), Err(GeometryError::NumericRange(_))));
    }

    #[test]
    fn dual_partials_match_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let base = random_anti_hermitian(&mut rng, 3, 1.5);
            let dirs: Vec<ComplexMatrix> =
                (0..3).map(|_| random_anti_hermitian(&mut rng, 3, 1.0)).collect();
            let mut a = base.to_dual();
            for (k, d) in dirs.iter().enumerate() {
                let seed = DualComplexMatrix::from_fn(3, 3, |r, col| {
                    let mut s = DualComplex::constant(c(0.0, 0.0));
                    s.pad_to(3);
                    s.partials[k] = *d.get(r, col);
                    s
                });
                a = a.add(&seed).unwrap();
            }
            let e = mat_exp(&a).unwrap();
            let h = 1e-3;
            for (k, d) in dirs.iter().enumerate() {
                let f = |t: f64| mat_exp(&base.add(&d.scale(t)).unwrap()).unwrap();
                let fd = f(-2.0 * h)
                    .sub(&f(2.0 * h))
                    .unwrap()
                    .add(&f(h).sub(&f(-h)).unwrap().scale(8.0))
                    .unwrap()
                    .scale(1.0 / (12.0 * h));
                let err = e.partial(k).distance(&fd).unwrap();
                assert!(err < 1e-8 * fd.frobenius_norm().max(1.0), "{err}");
            }
        }
    }
}
