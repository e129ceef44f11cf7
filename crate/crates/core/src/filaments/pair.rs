use num_complex::Complex;

use crate::error::{usage, Result};
use crate::filaments::{BaseMotion, FilamentField};
use crate::numerics::{ComplexField, Grid1D};
use crate::pointvortex::PointVortexState;
use crate::scalar::{lit, Real};

/// Wave-like solutions `Ψ_{1,2} = Φ ± A e^{i(kσ + ωt)}` of an equal pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairWave<T> {
    pub gamma: T,
    pub alpha: T,
    pub amplitude: T,
    pub k: T,
    /// `Γ/(2A²) - αΓk²`.
    pub omega: T,
}

pub fn pair_wave_solution<T: Real>(gamma: T, alpha: T, amplitude: T, k: T) -> Result<PairWave<T>> {
    if !(amplitude > T::zero()) {
        return usage("pair wave amplitude must be positive");
    }
    if gamma == T::zero() {
        return usage("circulation must be non-zero");
    }
    let omega = gamma / (lit::<T>(2.0) * amplitude * amplitude) - alpha * gamma * k * k;
    Ok(PairWave { gamma, alpha, amplitude, k, omega })
}

impl<T: Real> PairWave<T> {
    /// Half-separation `A e^{i(kσ + ωt)}`.
    pub fn half_separation(&self, t: T, sigma: T) -> Complex<T> {
        Complex::from_polar(self.amplitude, self.k * sigma + self.omega * t)
    }

    /// Absolute fields at time `t`, given the free solution `Φ(t)` on the grid.
    ///
    /// The base is the rigidly rotating pair at `±A`.
    pub fn fields(&self, grid: &Grid1D<T>, t: T, phi: &ComplexField<T>) -> Result<FilamentField<T>> {
        grid.check_len(phi.len())?;
        let a = self.amplitude;
        let zero = T::zero();
        let x = vec![Complex::new(a, zero), Complex::new(-a, zero)];
        let mut state = PointVortexState::with_core(x.clone(), vec![self.gamma; 2], vec![self.alpha; 2])?;
        let w0 = self.gamma / (lit::<T>(2.0) * a * a);
        let base = BaseMotion::rotating(x, Complex::new(zero, zero), w0);
        state.time = t;
        let sigma = grid.nodes();
        let sep: Vec<Complex<T>> = sigma.iter().map(|&s| self.half_separation(t, s)).collect();
        let p1 = ComplexField::new(phi.iter().zip(&sep).map(|(p, s)| *p + *s).collect());
        let p2 = ComplexField::new(phi.iter().zip(&sep).map(|(p, s)| *p - *s).collect());
        FilamentField::absolute(grid.clone(), &state, base, vec![p1, p2])
    }

    /// `∂_tΨ_{1,2} = ∂_tΦ ± iωA e^{i(kσ + ωt)}`.
    pub fn time_derivative(&self, grid: &Grid1D<T>, t: T, phi_t: &ComplexField<T>) -> Vec<ComplexField<T>> {
        let i = Complex::new(T::zero(), self.omega);
        let d: Vec<Complex<T>> = grid.nodes().iter().map(|&s| i * self.half_separation(t, s)).collect();
        vec![
            ComplexField::new(phi_t.iter().zip(&d).map(|(p, s)| *p + *s).collect()),
            ComplexField::new(phi_t.iter().zip(&d).map(|(p, s)| *p - *s).collect()),
        ]
    }
}
