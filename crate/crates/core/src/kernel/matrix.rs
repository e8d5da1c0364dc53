//! Dense square-or-rectangular matrices over plain or dual complex scalars.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::dual::DualComplex;
use crate::error::{GeometryError, Result};

/// Condition estimate above which [`mat_inverse`] refuses to invert.
pub const MAX_INVERSE_CONDITION: f64 = 1e12;

/// Entry type shared by [`ComplexMatrix`] and [`DualComplexMatrix`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_complex(c: Complex64) -> Self;
    /// Value part (the scalar itself for plain complex numbers).
    fn value(&self) -> Complex64;
    fn scale(&self, s: f64) -> Self;
    fn conj(&self) -> Self;
    fn is_finite(&self) -> bool;

    fn zero() -> Self {
        Self::from_complex(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Self::from_complex(Complex64::new(1.0, 0.0))
    }
}

impl Scalar for Complex64 {
    fn from_complex(c: Complex64) -> Self {
        c
    }
    fn value(&self) -> Complex64 {
        *self
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
}

impl Scalar for DualComplex {
    fn from_complex(c: Complex64) -> Self {
        DualComplex::constant(c)
    }
    fn value(&self) -> Complex64 {
        self.value
    }
    fn scale(&self, s: f64) -> Self {
        DualComplex::scale(self, s)
    }
    fn conj(&self) -> Self {
        DualComplex::conj(self)
    }
    fn is_finite(&self) -> bool {
        self.value.is_finite() && self.partials.iter().all(|p| p.is_finite())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type ComplexMatrix = Matrix<Complex64>;
pub type DualComplexMatrix = Matrix<DualComplex>;

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(GeometryError::InvalidInput("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(GeometryError::DimensionMismatch {
                expected: n_cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x.scale(s))
    }

    /// Multiplies every entry by a complex constant.
    pub fn scale_complex(&self, z: Complex64) -> Self {
        let z = S::from_complex(z);
        self.map(|x| x.clone() * z.clone())
    }

    /// Value parts as a plain complex matrix.
    pub fn value(&self) -> ComplexMatrix {
        self.map(|x| x.value())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Scalar::is_finite)
    }

    /// Frobenius norm of the value part.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.value().norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum of the value part.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).value().norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> S {
        (1..self.rows.min(self.cols)).fold(self.get(0, 0).clone(), |acc, i| {
            acc + self.get(i, i).clone()
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GeometryError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }
}

impl ComplexMatrix {
    /// Lifts a plain matrix to dual entries with no seeded directions.
    pub fn to_dual(&self) -> DualComplexMatrix {
        self.map(|&z| DualComplex::constant(z))
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// Largest |imaginary part| among the entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl DualComplexMatrix {
    /// Matrix of partial derivatives along seeded direction `index`.
    pub fn partial(&self, index: usize) -> ComplexMatrix {
        self.map(|x| x.partial(index))
    }

    pub fn directions(&self) -> usize {
        self.data.iter().map(|x| x.directions()).max().unwrap_or(0)
    }

    pub fn pad_to(&mut self, directions: usize) {
        for x in &mut self.data {
            x.pad_to(directions);
        }
    }
}

/// Standard matrix product.
pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    if a.cols != b.rows {
        return Err(GeometryError::DimensionMismatch {
            expected: a.cols,
            found: b.rows,
        });
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |r, c| {
        (1..a.cols).fold(a.get(r, 0).clone() * b.get(0, c).clone(), |acc, k| {
            acc + a.get(r, k).clone() * b.get(k, c).clone()
        })
    }))
}

/// Conjugate transpose.
pub fn mat_adjoint<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    Matrix::from_fn(a.cols, a.rows, |r, c| a.get(c, r).conj())
}

/// Plain transpose.
pub fn mat_transpose<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    Matrix::from_fn(a.cols, a.rows, |r, c| a.get(c, r).clone())
}

/// Solves `a · x = b` by Gaussian elimination with partial pivoting on the
/// value part. Works for dual entries, so derivatives flow through the solve.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    let n = a.rows;
    if !a.is_square() {
        return Err(GeometryError::InvalidInput(format!(
            "solve needs a square system, got {}x{}",
            a.rows, a.cols
        )));
    }
    if b.rows != n {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            found: b.rows,
        });
    }
    let scale = a.norm1();
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| {
                lu.get(i, k)
                    .value()
                    .norm()
                    .total_cmp(&lu.get(j, k).value().norm())
            })
            .unwrap_or(k);
        let magnitude = lu.get(pivot, k).value().norm();
        if !(magnitude > f64::EPSILON * scale) {
            return Err(GeometryError::Singular {
                what: "matrix",
                at: vec![],
                condition: f64::INFINITY,
            });
        }
        if pivot != k {
            for c in 0..n {
                lu.data.swap(k * n + c, pivot * n + c);
            }
            for c in 0..x.cols {
                x.data.swap(k * x.cols + c, pivot * x.cols + c);
            }
        }
        let p = lu.get(k, k).clone();
        for r in (k + 1)..n {
            let factor = lu.get(r, k).clone() / p.clone();
            for c in k..n {
                let v = lu.get(r, c).clone() - factor.clone() * lu.get(k, c).clone();
                lu.set(r, c, v);
            }
            for c in 0..x.cols {
                let v = x.get(r, c).clone() - factor.clone() * x.get(k, c).clone();
                x.set(r, c, v);
            }
        }
    }
    for r in (0..n).rev() {
        for c in 0..x.cols {
            let mut acc = x.get(r, c).clone();
            for k in (r + 1)..n {
                acc = acc - lu.get(r, k).clone() * x.get(k, c).clone();
            }
            x.set(r, c, acc / lu.get(r, r).clone());
        }
    }
    Ok(x)
}

/// Inverse of a well-conditioned square matrix.
///
/// The 1-norm condition estimate `‖A‖₁‖A⁻¹‖₁` must stay below
/// [`MAX_INVERSE_CONDITION`].
pub fn mat_inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let inv = solve(a, &ComplexMatrix::identity(a.rows))?;
    let condition = a.norm1() * inv.norm1();
    if !condition.is_finite() || condition > MAX_INVERSE_CONDITION || !inv.is_finite() {
        return Err(GeometryError::Singular {
            what: "matrix",
            at: vec![],
            condition,
        });
    }
    Ok(inv)
}
