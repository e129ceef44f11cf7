use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::pointvortex::PointVortexState;
use crate::scalar::{count, lit, Real};

/// Regular `N`-gon of equal circulations `Γ`, optionally with a central vortex `Γ0`.
///
/// Returns the configuration and its angular velocity `(Γ(N-1) + 2Γ0)/(2R²)`.
/// The central vortex, when present, is the last entry.
pub fn polygon_equilibrium<T: Real>(
    n: usize,
    gamma: T,
    radius: T,
    gamma0: Option<T>,
) -> Result<(PointVortexState<T>, T)> {
    if n < 2 {
        return usage("a polygon needs at least two vertices");
    }
    if !(radius > T::zero()) {
        return usage("polygon radius must be positive");
    }
    let mut x: Vec<Complex<T>> = (0..n)
        .map(|j| Complex::from_polar(radius, T::TAU() * count(j) / count(n)))
        .collect();
    let mut g = vec![gamma; n];
    let mut spin = gamma * count(n - 1);
    if let Some(g0) = gamma0 {
        x.push(Complex::new(T::zero(), T::zero()));
        g.push(g0);
        spin += lit::<T>(2.0) * g0;
    }
    let state = PointVortexState::new(x, g)?;
    Ok((state, spin / (lit::<T>(2.0) * radius * radius)))
}

/// The explicit three-vortex self-similar collapse with `Γ = (2, 2, -1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeVortexCollapse<T> {
    pub circulations: [T; 3],
    pub initial: [Complex<T>; 3],
    /// Center of vorticity.
    pub center: Complex<T>,
    /// `ω̄ = a + ib`.
    pub omega_bar: Complex<T>,
    /// Collapse time `1/(2b)`.
    pub tau: T,
}

impl<T: Real> Default for ThreeVortexCollapse<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> ThreeVortexCollapse<T> {
    pub fn new() -> Self {
        let s2 = T::SQRT_2();
        let three = lit::<T>(3.0);
        let b = s2 / lit(6.0);
        ThreeVortexCollapse {
            circulations: [lit(2.0), lit(2.0), -T::one()],
            initial: [Complex::new(-T::one(), T::zero()), Complex::new(T::one(), T::zero()), Complex::new(T::one(), s2)],
            center: Complex::new(-T::one() / three, -s2 / three),
            omega_bar: Complex::new(lit(5.0 / 6.0), b),
            tau: T::one() / (lit::<T>(2.0) * b),
        }
    }

    /// Homographic factor `g(t) = √(1-t/τ) exp(-iaτ ln(1-t/τ))`.
    pub fn factor(&self, t: T) -> Result<Complex<T>> {
        if !(t >= T::zero()) {
            return Err(Error::Domain(format!("three-vortex solution needs t >= 0, got {t}")));
        }
        if t >= self.tau {
            return Err(Error::Domain(format!("t = {t} is past the collapse time {}", self.tau)));
        }
        let q = T::one() - t / self.tau;
        Ok(Complex::from_polar(q.sqrt(), -self.omega_bar.re * self.tau * q.ln()))
    }

    /// Instantaneous rotation-dilation rate `ω(t) = ω̄/(1 - t/τ)`.
    pub fn omega(&self, t: T) -> Complex<T> {
        self.omega_bar / (T::one() - t / self.tau)
    }

    pub fn positions(&self, t: T) -> Result<[Complex<T>; 3]> {
        let g = self.factor(t)?;
        Ok(self.initial.map(|x| self.center + (x - self.center) * g))
    }

    pub fn state(&self, t: T) -> Result<PointVortexState<T>> {
        let mut s = PointVortexState::new(self.positions(t)?.to_vec(), self.circulations.to_vec())?;
        s.time = t;
        Ok(s)
    }
}

/// Closed-form three-vortex collapse configuration at time `t ∈ [0, τ)`.
pub fn three_vortex_solution<T: Real>(t: T) -> Result<PointVortexState<T>> {
    ThreeVortexCollapse::new().state(t)
}
