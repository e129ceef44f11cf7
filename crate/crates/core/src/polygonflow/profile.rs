use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::numerics::{fd_d2, ComplexField, Grid1D};
use crate::scalar::{lit, Real};

/// Common profile `Φ` of the reduction `Ψ_j = X_j Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonProfile<T: Real> {
    pub grid: Grid1D<T>,
    pub phi: ComplexField<T>,
    /// Angular velocity of the underlying polygon.
    pub omega: T,
    /// Dispersion coefficient.
    pub kappa: T,
}

impl<T: Real> PolygonProfile<T> {
    pub fn new(grid: Grid1D<T>, phi: ComplexField<T>, omega: T) -> Result<Self> {
        Self::with_kappa(grid, phi, omega, T::one())
    }

    pub fn with_kappa(grid: Grid1D<T>, phi: ComplexField<T>, omega: T, kappa: T) -> Result<Self> {
        grid.check_len(phi.len())?;
        if !phi.is_finite() {
            return usage("profile must be finite");
        }
        Ok(PolygonProfile { grid, phi, omega, kappa })
    }

    /// Index of the first vanished node, if any.
    pub fn vanished(&self) -> Option<usize> {
        self.phi.iter().position(|z| z.norm_sqr() == T::zero())
    }

    /// `(index, min |Φ|)`.
    pub fn min_modulus(&self) -> (usize, T) {
        self.phi.min_abs()
    }
}

fn potential<T: Real>(phi: &[Complex<T>], omega: T) -> Result<Vec<Complex<T>>> {
    phi.iter()
        .enumerate()
        .map(|(m, &z)| {
            let r2 = z.norm_sqr();
            if r2 == T::zero() {
                return Err(Error::Vanishing { index: m });
            }
            Ok(z * (omega * (T::one() - r2) / r2))
        })
        .collect()
}

fn assemble<T: Real>(p: &PolygonProfile<T>, d2: Vec<Complex<T>>) -> Result<ComplexField<T>> {
    let i = Complex::new(T::zero(), T::one());
    let v = potential(&p.phi, p.omega)?;
    Ok(ComplexField::new(d2.iter().zip(v).map(|(a, b)| i * (*a * p.kappa + b)).collect()))
}

/// `∂_tΦ = i[κΦ'' + ωΦ(1 - |Φ|²)/|Φ|²]` with spectral `∂_σ²`.
pub fn bm_rhs<T: Real>(p: &PolygonProfile<T>) -> Result<ComplexField<T>> {
    assemble(p, p.grid.d2(&p.phi)?)
}

/// As [`bm_rhs`] with eighth-order finite differences, for non-periodic profiles.
pub fn bm_rhs_fd<T: Real>(p: &PolygonProfile<T>) -> Result<ComplexField<T>> {
    assemble(p, fd_d2(&p.phi, p.grid.spacing()))
}

/// `(E, E_GP)` with `E = ½∫|Φ'|² + (ω/2)∫(|Φ|² - 1 - ln|Φ|²)` and
/// `E_GP = ½∫|Φ'|² + (ω/4)∫(|Φ|² - 1)²`.
pub fn bm_energy<T: Real>(p: &PolygonProfile<T>) -> Result<(T, T)> {
    if let Some(index) = p.vanished() {
        return Err(Error::Vanishing { index });
    }
    let h = p.grid.spacing();
    let half = lit::<T>(0.5);
    let d1 = p.grid.d1(&p.phi)?;
    let kinetic = half * h * d1.iter().map(|z| z.norm_sqr()).sum::<T>();
    let mut log = T::zero();
    let mut gp = T::zero();
    for z in p.phi.iter() {
        let y = z.norm_sqr() - T::one();
        log += y - y.ln_1p();
        gp += y * y;
    }
    Ok((kinetic + p.omega * half * log * h, kinetic + p.omega * lit::<T>(0.25) * gp * h))
}
