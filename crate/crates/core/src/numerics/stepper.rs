use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{ComplexField, Grid1D};
use crate::scalar::{is_finite_c, lit, Real};

/// State that can be advanced by explicit Runge–Kutta stages.
pub trait OdeState<T: Real>: Clone {
    /// `self += a * k`.
    fn axpy(&mut self, a: T, k: &Self);
    fn all_finite(&self) -> bool;
}

impl<T: Real> OdeState<T> for T {
    fn axpy(&mut self, a: T, k: &Self) {
        *self += a * *k;
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> OdeState<T> for Complex<T> {
    fn axpy(&mut self, a: T, k: &Self) {
        *self = *self + *k * a;
    }
    fn all_finite(&self) -> bool {
        is_finite_c(*self)
    }
}

impl<T: Real, const N: usize> OdeState<T> for [T; N] {
    fn axpy(&mut self, a: T, k: &Self) {
        for (x, y) in self.iter_mut().zip(k) {
            *x += a * *y;
        }
    }
    fn all_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }
}

impl<T: Real, S: OdeState<T>> OdeState<T> for Vec<S> {
    fn axpy(&mut self, a: T, k: &Self) {
        for (x, y) in self.iter_mut().zip(k) {
            x.axpy(a, y);
        }
    }
    fn all_finite(&self) -> bool {
        self.iter().all(|x| x.all_finite())
    }
}

impl<T: Real> OdeState<T> for ComplexField<T> {
    fn axpy(&mut self, a: T, k: &Self) {
        for (x, y) in self.iter_mut().zip(k.iter()) {
            *x = *x + *y * a;
        }
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl<T: Real, A: OdeState<T>, B: OdeState<T>> OdeState<T> for (A, B) {
    fn axpy(&mut self, a: T, k: &Self) {
        self.0.axpy(a, &k.0);
        self.1.axpy(a, &k.1);
    }
    fn all_finite(&self) -> bool {
        self.0.all_finite() && self.1.all_finite()
    }
}

/// One classical fourth-order Runge–Kutta step of `y' = f(t, y)`.
pub fn rk4_step<T, S, F>(y: &S, t: T, dt: T, mut f: F) -> Result<S>
where
    T: Real,
    S: OdeState<T>,
    F: FnMut(T, &S) -> Result<S>,
{
    let half = dt / lit(2.0);
    let k1 = f(t, y)?;
    let mut y2 = y.clone();
    y2.axpy(half, &k1);
    let k2 = f(t + half, &y2)?;
    let mut y3 = y.clone();
    y3.axpy(half, &k2);
    let k3 = f(t + half, &y3)?;
    let mut y4 = y.clone();
    y4.axpy(dt, &k3);
    let k4 = f(t + dt, &y4)?;
    let mut out = y.clone();
    let sixth = dt / lit(6.0);
    out.axpy(sixth, &k1);
    out.axpy(sixth + sixth, &k2);
    out.axpy(sixth + sixth, &k3);
    out.axpy(sixth, &k4);
    if !out.all_finite() {
        return Err(Error::NonFinite(" in Runge-Kutta step".into()));
    }
    Ok(out)
}

/// Strang splitting for `u_j,t = i c_j u_j'' + N(t, u)`.
///
/// `nonlinear(t0, dt, fields)` must advance the fields by the nonlinear
/// sub-flow over `[t0, t0 + dt]`.
pub fn strang_step<T, F>(
    fields: &mut [ComplexField<T>],
    coeffs: &[T],
    grid: &Grid1D<T>,
    t: T,
    dt: T,
    mut nonlinear: F,
) -> Result<()>
where
    T: Real,
    F: FnMut(T, T, &mut [ComplexField<T>]) -> Result<()>,
{
    if coeffs.len() != fields.len() {
        return Err(Error::LengthMismatch { expected: fields.len(), found: coeffs.len() });
    }
    let half = dt / lit(2.0);
    for (u, &cj) in fields.iter_mut().zip(coeffs) {
        *u = ComplexField::new(grid.free_propagate(u, cj, half)?);
    }
    nonlinear(t, dt, fields)?;
    for (u, &cj) in fields.iter_mut().zip(coeffs) {
        *u = ComplexField::new(grid.free_propagate(u, cj, half)?);
    }
    for u in fields.iter() {
        if !u.is_finite() {
            return Err(Error::NonFinite(" in split step".into()));
        }
    }
    Ok(())
}

/// One Strang step of `u_t = i(coeff u'' + V(u))` with `V` applied pointwise.
///
/// The potential sub-step is a single RK4 step of `u_t = i V(u)`; a
/// non-finite potential value is reported as a singular potential.
pub fn split_step<T, V>(
    f: &ComplexField<T>,
    grid: &Grid1D<T>,
    dt: T,
    coeff: T,
    potential: V,
) -> Result<ComplexField<T>>
where
    T: Real,
    V: Fn(Complex<T>) -> Complex<T>,
{
    grid.check_len(f.len())?;
    let i = Complex::new(T::zero(), T::one());
    let mut fields = vec![f.clone()];
    strang_step(&mut fields, &[coeff], grid, T::zero(), dt, |t0, h, u| {
        let next = rk4_step(&u[0], t0, h, |_, y: &ComplexField<T>| {
            let mut out = ComplexField::zeros(y.len());
            for (m, &z) in y.iter().enumerate() {
                let v = potential(z);
                if !is_finite_c(v) {
                    return Err(Error::SingularPotential { j: 0, k: 0, index: m });
                }
                out[m] = i * v;
            }
            Ok(out)
        })?;
        u[0] = next;
        Ok(())
    })?;
    Ok(fields.pop().unwrap_or_else(|| f.clone()))
}
