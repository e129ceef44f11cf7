use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::pointvortex::PointVortexState;
use crate::scalar::{lit, Real};

/// Velocities `dX_j/dt = i Σ_{k≠j} Γ_k (X_j - X_k)/|X_j - X_k|²`.
pub fn velocities<T: Real>(positions: &[Complex<T>], circulations: &[T]) -> Result<Vec<Complex<T>>> {
    let n = positions.len();
    if circulations.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: circulations.len() });
    }
    let mut v = vec![Complex::new(T::zero(), T::zero()); n];
    for j in 0..n {
        for k in j + 1..n {
            let d = positions[j] - positions[k];
            let r2 = d.norm_sqr();
            if r2 == T::zero() {
                return Err(Error::Coincident { j, k });
            }
            let w = Complex::new(-d.im, d.re) / r2;
            v[j] = v[j] + w * circulations[k];
            v[k] = v[k] - w * circulations[j];
        }
    }
    Ok(v)
}

pub fn pv_rhs<T: Real>(state: &PointVortexState<T>) -> Result<Vec<Complex<T>>> {
    velocities(&state.positions, &state.circulations)
}

/// First integrals of the point-vortex system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvInvariants<T> {
    /// `H = -½ Σ_{j≠k} Γ_j Γ_k ln|X_j - X_k|`.
    pub hamiltonian: T,
    /// `Σ Γ_j X_j`.
    pub center: Complex<T>,
    /// `Σ Γ_j |X_j|²`.
    pub angular_momentum: T,
    /// `Σ_{j,k} Γ_j Γ_k |X_j - X_k|²`.
    pub t_moment: T,
}

pub fn pv_invariants<T: Real>(state: &PointVortexState<T>) -> Result<PvInvariants<T>> {
    invariants_of(&state.positions, &state.circulations)
}

pub(crate) fn invariants_of<T: Real>(x: &[Complex<T>], g: &[T]) -> Result<PvInvariants<T>> {
    let n = x.len();
    let mut h = T::zero();
    let mut tm = T::zero();
    for j in 0..n {
        for k in j + 1..n {
            let r2 = (x[j] - x[k]).norm_sqr();
            if r2 == T::zero() {
                return Err(Error::Coincident { j, k });
            }
            let gg = g[j] * g[k];
            h -= gg * r2.ln() / lit(2.0);
            tm += lit::<T>(2.0) * gg * r2;
        }
    }
    let center = x.iter().zip(g).fold(Complex::new(T::zero(), T::zero()), |c, (z, &w)| c + z * w);
    let m = x.iter().zip(g).map(|(z, &w)| w * z.norm_sqr()).sum();
    Ok(PvInvariants { hamiltonian: h, center, angular_momentum: m, t_moment: tm })
}

/// Algebraic self-similar collapse conditions for `N ≥ 3` vortices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseCertificate<T> {
    /// `Σ_{j<k} Γ_j Γ_k`.
    pub harmonic_sum: T,
    pub t_moment: T,
    pub admissible: bool,
}

pub fn collapse_check<T: Real>(state: &PointVortexState<T>) -> Result<CollapseCertificate<T>> {
    collapse_check_with_tol(state, lit(1e-12))
}

/// Certificate with both quantities compared against `tol` times their natural scale.
pub fn collapse_check_with_tol<T: Real>(state: &PointVortexState<T>, tol: T) -> Result<CollapseCertificate<T>> {
    if state.len() < 3 {
        return usage("collapse needs at least three vortices");
    }
    let g = &state.circulations;
    let mut s = T::zero();
    for j in 0..g.len() {
        for k in j + 1..g.len() {
            s += g[j] * g[k];
        }
    }
    let inv = pv_invariants(state)?;
    let scale = g.iter().map(|x| x.abs()).sum::<T>().powi(2);
    let dmax = (0..state.len())
        .flat_map(|j| (0..state.len()).map(move |k| (j, k)))
        .fold(T::zero(), |m, (j, k)| m.max((state.positions[j] - state.positions[k]).norm_sqr()));
    let admissible = s.abs() <= tol * scale && inv.t_moment.abs() <= tol * scale * dmax;
    Ok(CollapseCertificate { harmonic_sum: s, t_moment: inv.t_moment, admissible })
}
