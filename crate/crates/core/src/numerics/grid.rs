use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::scalar::{count, lit, FftPlan, Real};

/// Uniform periodic grid on `[-L/2, L/2)` with cached transforms.
#[derive(Clone)]
pub struct Grid1D<T: Real> {
    length: T,
    points: usize,
    spacing: T,
    plan: FftPlan<T>,
    wavenumbers: Arc<Vec<T>>,
}

impl<T: Real> fmt::Debug for Grid1D<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid1D")
            .field("length", &self.length)
            .field("points", &self.points)
            .finish()
    }
}

impl<T: Real> PartialEq for Grid1D<T> {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.length == other.length
    }
}

impl<T: Real> Grid1D<T> {
    pub fn new(length: T, points: usize) -> Result<Self> {
        if !(length.is_finite() && length > T::zero()) {
            return usage(format!("grid length must be positive, got {length}"));
        }
        if points < 4 || !points.is_power_of_two() {
            return usage(format!("grid points must be a power of two >= 4, got {points}"));
        }
        let spacing = length / count(points);
        let base = T::TAU() / length;
        let half = points / 2;
        let wavenumbers = (0..points)
            .map(|m| {
                if m < half {
                    base * count(m)
                } else if m == half {
                    T::zero()
                } else {
                    -base * count(points - m)
                }
            })
            .collect();
        Ok(Grid1D {
            length,
            points,
            spacing,
            plan: T::fft_plan(points),
            wavenumbers: Arc::new(wavenumbers),
        })
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn node(&self, m: usize) -> T {
        -self.length / lit(2.0) + self.spacing * count(m)
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.points).map(|m| self.node(m)).collect()
    }

    /// Index of the node closest to `sigma` (after periodic wrapping).
    pub fn nearest(&self, sigma: T) -> usize {
        let x = (sigma + self.length / lit(2.0)) / self.spacing;
        let m = x.round().to_i64().unwrap_or(0);
        m.rem_euclid(self.points as i64) as usize
    }

    /// Wavenumbers in FFT order; the Nyquist entry is zero.
    pub fn wavenumbers(&self) -> &[T] {
        &self.wavenumbers
    }

    /// Wavenumber for the Nyquist mode, kept for second derivatives.
    pub fn nyquist(&self) -> T {
        T::PI() / self.spacing
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if n == self.points {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.points, found: n })
        }
    }

    pub fn forward(&self, buf: &mut [Complex<T>]) {
        (self.plan.forward)(buf);
    }

    pub fn inverse(&self, buf: &mut [Complex<T>]) {
        (self.plan.inverse)(buf);
        let scale = T::one() / count(self.points);
        for z in buf.iter_mut() {
            *z = *z * scale;
        }
    }

    /// Applies the Fourier multiplier `m(k)` to `f`.
    pub fn apply_multiplier(
        &self,
        f: &[Complex<T>],
        m: impl Fn(usize, T) -> Complex<T>,
    ) -> Result<Vec<Complex<T>>> {
        self.check_len(f.len())?;
        let mut buf = f.to_vec();
        self.forward(&mut buf);
        for (i, z) in buf.iter_mut().enumerate() {
            *z = *z * m(i, self.wavenumbers[i]);
        }
        self.inverse(&mut buf);
        Ok(buf)
    }

    pub fn d1(&self, f: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.apply_multiplier(f, |_, k| Complex::new(T::zero(), k))
    }

    pub fn d2(&self, f: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let half = self.points / 2;
        let ny = self.nyquist();
        self.apply_multiplier(f, |i, k| {
            let k = if i == half { ny } else { k };
            Complex::new(-k * k, T::zero())
        })
    }

    /// Exact solution operator of `u_t = i coeff u''` over time `t`.
    pub fn free_propagate(&self, f: &[Complex<T>], coeff: T, t: T) -> Result<Vec<Complex<T>>> {
        let half = self.points / 2;
        let ny = self.nyquist();
        self.apply_multiplier(f, |i, k| {
            let k = if i == half { ny } else { k };
            Complex::from_polar(T::one(), -coeff * k * k * t)
        })
    }
}
