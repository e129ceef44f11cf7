use std::ops::{Deref, DerefMut, Index, IndexMut};

use num_complex::Complex;

use crate::error::Result;
use crate::numerics::Grid1D;
use crate::scalar::{is_finite_c, Real};

/// Complex samples of a function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField<T> {
    values: Vec<Complex<T>>,
}

impl<T: Real> ComplexField<T> {
    pub fn new(values: Vec<Complex<T>>) -> Self {
        ComplexField { values }
    }

    pub fn zeros(n: usize) -> Self {
        ComplexField { values: vec![Complex::new(T::zero(), T::zero()); n] }
    }

    pub fn constant(n: usize, value: Complex<T>) -> Self {
        ComplexField { values: vec![value; n] }
    }

    pub fn from_fn(grid: &Grid1D<T>, f: impl Fn(T) -> Complex<T>) -> Self {
        ComplexField { values: grid.nodes().into_iter().map(f).collect() }
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        ComplexField { values: self.values.iter().map(|&z| f(z)).collect() }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        ComplexField {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn min_abs(&self) -> (usize, T) {
        let mut best = (0, T::infinity());
        for (i, z) in self.values.iter().enumerate() {
            let r = z.norm();
            if r < best.1 {
                best = (i, r);
            }
        }
        best
    }

    /// `(h Σ |f|²)^{1/2}`.
    pub fn norm_l2(&self, grid: &Grid1D<T>) -> T {
        (grid.spacing() * self.values.iter().map(|z| z.norm_sqr()).sum::<T>()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|&z| is_finite_c(z))
    }

    pub fn d1(&self, grid: &Grid1D<T>) -> Result<Self> {
        Ok(ComplexField::new(grid.d1(&self.values)?))
    }

    pub fn d2(&self, grid: &Grid1D<T>) -> Result<Self> {
        Ok(ComplexField::new(grid.d2(&self.values)?))
    }
}

impl<T> Deref for ComplexField<T> {
    type Target = [Complex<T>];
    fn deref(&self) -> &Self::Target {
        &self.values
    }
}

impl<T> DerefMut for ComplexField<T> {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.values
    }
}

impl<T> Index<usize> for ComplexField<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.values[i]
    }
}

impl<T> IndexMut<usize> for ComplexField<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.values[i]
    }
}

impl<T: Real> From<Vec<Complex<T>>> for ComplexField<T> {
    fn from(values: Vec<Complex<T>>) -> Self {
        ComplexField::new(values)
    }
}

/// Second spectral derivative of `f`.
pub fn spectral_d2<T: Real>(f: &ComplexField<T>, grid: &Grid1D<T>) -> Result<ComplexField<T>> {
    f.d2(grid)
}

/// First spectral derivative of `f`.
pub fn spectral_d1<T: Real>(f: &ComplexField<T>, grid: &Grid1D<T>) -> Result<ComplexField<T>> {
    f.d1(grid)
}
