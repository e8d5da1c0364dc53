//! Forward-mode dual numbers with a vector of first-order partials.
//!
//! A `Dual<T>` carries a value and one partial per seeded coordinate
//! direction. Partial slots past the end of the stored vector are zero, so
//! constants need no allocation and mix freely with seeded variables.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use smallvec::SmallVec;

/// Inline capacity covers every cataloged group (sp(2) has dimension 10).
pub const INLINE_PARTIALS: usize = 10;

pub type Partials<T> = SmallVec<[T; INLINE_PARTIALS]>;

#[derive(Clone, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub partials: Partials<T>,
}

/// Real dual scalar.
pub type DualScalar = Dual<f64>;
/// Complex dual scalar, the entry type of [`DualComplexMatrix`](super::DualComplexMatrix).
pub type DualComplex = Dual<Complex64>;

impl<T: fmt::Debug> fmt::Debug for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dual({:?}; {:?})", self.value, self.partials.as_slice())
    }
}

impl<T> Dual<T>
where
    T: Copy + Zero + One,
{
    pub fn new(value: T, partials: impl IntoIterator<Item = T>) -> Self {
        Dual {
            value,
            partials: partials.into_iter().collect(),
        }
    }

    /// A value with no seeded directions.
    pub fn constant(value: T) -> Self {
        Dual {
            value,
            partials: SmallVec::new(),
        }
    }

    /// Seeds direction `index` out of `directions` with unit derivative.
    pub fn variable(value: T, index: usize, directions: usize) -> Self {
        assert!(index < directions, "seed index {index} out of {directions}");
        let mut partials: Partials<T> = SmallVec::from_elem(T::zero(), directions);
        partials[index] = T::one();
        Dual { value, partials }
    }

    pub fn partial(&self, index: usize) -> T {
        self.partials.get(index).copied().unwrap_or_else(T::zero)
    }

    pub fn directions(&self) -> usize {
        self.partials.len()
    }

    /// Extends the partials with zeros up to `directions` slots.
    pub fn pad_to(&mut self, directions: usize) {
        if self.partials.len() < directions {
            self.partials.resize(directions, T::zero());
        }
    }

    fn zip_partials(&self, other: &Self, f: impl Fn(T, T) -> T) -> Partials<T> {
        let n = self.partials.len().max(other.partials.len());
        (0..n).map(|i| f(self.partial(i), other.partial(i))).collect()
    }

    fn map_partials(&self, f: impl Fn(T) -> T) -> Partials<T> {
        self.partials.iter().map(|&p| f(p)).collect()
    }

    /// Applies a scalar function given its value and derivative at `self.value`.
    pub fn chain(&self, value: T, derivative: T) -> Self
    where
        T: Mul<Output = T>,
    {
        Dual {
            value,
            partials: self.map_partials(|p| derivative * p),
        }
    }
}

impl Dual<f64> {
    pub fn sin(&self) -> Self {
        self.chain(self.value.sin(), self.value.cos())
    }

    pub fn cos(&self) -> Self {
        self.chain(self.value.cos(), -self.value.sin())
    }

    pub fn sqrt(&self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r)
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.chain(e, e)
    }

    pub fn scale(&self, s: f64) -> Self {
        Dual {
            value: self.value * s,
            partials: self.map_partials(|p| p * s),
        }
    }
}

impl Dual<Complex64> {
    pub fn conj(&self) -> Self {
        Dual {
            value: self.value.conj(),
            partials: self.map_partials(|p| p.conj()),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Dual {
            value: self.value * s,
            partials: self.map_partials(|p| p * s),
        }
    }

    pub fn re(&self) -> DualScalar {
        Dual {
            value: self.value.re,
            partials: self.partials.iter().map(|p| p.re).collect(),
        }
    }
}

impl<T> Add for Dual<T>
where
    T: Copy + Zero + One + Add<Output = T>,
{
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            value: self.value + rhs.value,
            partials: self.zip_partials(&rhs, |a, b| a + b),
        }
    }
}

impl<T> Sub for Dual<T>
where
    T: Copy + Zero + One + Sub<Output = T>,
{
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            value: self.value - rhs.value,
            partials: self.zip_partials(&rhs, |a, b| a - b),
        }
    }
}

impl<T> Mul for Dual<T>
where
    T: Copy + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (x, y) = (self.value, rhs.value);
        Dual {
            value: x * y,
            partials: self.zip_partials(&rhs, |dx, dy| x * dy + y * dx),
        }
    }
}

impl<T> Div for Dual<T>
where
    T: Copy + Zero + One + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let (x, y) = (self.value, rhs.value);
        let y2 = y * y;
        Dual {
            value: x / y,
            partials: self.zip_partials(&rhs, |dx, dy| (dx * y - x * dy) / y2),
        }
    }
}

impl<T> Neg for Dual<T>
where
    T: Copy + Zero + One + Neg<Output = T>,
{
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            value: -self.value,
            partials: self.map_partials(|p| -p),
        }
    }
}

impl<T> Zero for Dual<T>
where
    T: Copy + Zero + One + Add<Output = T>,
{
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.partials.iter().all(|p| p.is_zero())
    }
}

impl<T> One for Dual<T>
where
    T: Copy + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    fn one() -> Self {
        Dual::constant(T::one())
    }
}
