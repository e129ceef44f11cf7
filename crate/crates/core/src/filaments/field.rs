use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::numerics::{ComplexField, Grid1D};
use crate::pointvortex::{velocities, PointVortexState, ThreeVortexCollapse};
use crate::scalar::{lit, Real};

/// What the stored fields represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Filament positions `Ψ_j`.
    Absolute,
    /// Perturbations `u_j = Ψ_j - X_j`.
    Perturbation,
}

/// Trajectory `X_j(t)` of the underlying point vortices.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseMotion<T> {
    /// `X_j(t) = c + (X_j(0) - c) g(t)` with `ġ = i ω(t) g`, `ω(t) = ω̄` or `ω̄/(1 - t/τ)`.
    Homographic { initial: Vec<Complex<T>>, center: Complex<T>, omega_bar: Complex<T>, tau: Option<T> },
    /// `X_j(t) = X_j(0) + v t`.
    Translating { initial: Vec<Complex<T>>, velocity: Complex<T> },
    /// Integrated by RK4 alongside the fields.
    Integrated { initial: Vec<Complex<T>> },
}

impl<T: Real> BaseMotion<T> {
    pub fn stationary(initial: Vec<Complex<T>>) -> Self {
        BaseMotion::Translating { initial, velocity: Complex::new(T::zero(), T::zero()) }
    }

    pub fn rotating(initial: Vec<Complex<T>>, center: Complex<T>, omega: T) -> Self {
        BaseMotion::Homographic { initial, center, omega_bar: Complex::new(omega, T::zero()), tau: None }
    }

    pub fn three_vortex(sol: &ThreeVortexCollapse<T>) -> Self {
        BaseMotion::Homographic {
            initial: sol.initial.to_vec(),
            center: sol.center,
            omega_bar: sol.omega_bar,
            tau: Some(sol.tau),
        }
    }

    /// Recognises rigid translations and rigid rotations about the center
    /// of vorticity; anything else is integrated numerically.
    pub fn detect(state: &PointVortexState<T>) -> Result<Self> {
        let x = &state.positions;
        let g = &state.circulations;
        let v = velocities(x, g)?;
        let n = x.len();
        let tol = lit::<T>(1e-10);
        let vmax = v.iter().fold(T::zero(), |m, z| m.max(z.norm()));
        let mean = v.iter().fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) / lit::<T>(n as f64);
        if v.iter().all(|z| (z - mean).norm() <= tol * (T::one() + vmax)) {
            return Ok(BaseMotion::Translating { initial: x.clone(), velocity: mean });
        }
        let total = state.total_circulation();
        if total.abs() > tol {
            let center = x.iter().zip(g).fold(Complex::new(T::zero(), T::zero()), |a, (z, &w)| a + z * w) / total;
            let i = Complex::new(T::zero(), T::one());
            let num: T = x.iter().zip(&v).map(|(z, w)| ((i * (z - center)).conj() * w).re).sum();
            let den: T = x.iter().map(|z| (z - center).norm_sqr()).sum();
            if den > T::zero() {
                let omega = num / den;
                let ok = x.iter().zip(&v).all(|(z, w)| (w - i * (z - center) * omega).norm() <= tol * (T::one() + vmax));
                if ok {
                    return Ok(BaseMotion::rotating(x.clone(), center, omega));
                }
            }
        }
        Ok(BaseMotion::Integrated { initial: x.clone() })
    }

    pub fn initial(&self) -> &[Complex<T>] {
        match self {
            BaseMotion::Homographic { initial, .. }
            | BaseMotion::Translating { initial, .. }
            | BaseMotion::Integrated { initial } => initial,
        }
    }

    pub fn is_integrated(&self) -> bool {
        matches!(self, BaseMotion::Integrated { .. })
    }

    /// Collapse time of a homographic base, if any.
    pub fn collapse_time(&self) -> Option<T> {
        match self {
            BaseMotion::Homographic { tau, .. } => *tau,
            _ => None,
        }
    }

    /// Closed-form positions; `None` for integrated bases.
    pub fn positions_at(&self, t: T) -> Option<Result<Vec<Complex<T>>>> {
        match self {
            BaseMotion::Homographic { initial, center, omega_bar, tau } => {
                let g = match tau {
                    None => Ok((Complex::new(T::zero(), T::one()) * omega_bar * t).exp()),
                    Some(tau) => {
                        let q = T::one() - t / *tau;
                        if q <= T::zero() {
                            Err(Error::Domain(format!("base trajectory collapsed at t = {tau}")))
                        } else {
                            Ok((Complex::new(T::zero(), -*tau) * omega_bar * q.ln()).exp())
                        }
                    }
                };
                Some(g.map(|g| initial.iter().map(|x| center + (x - center) * g).collect()))
            }
            BaseMotion::Translating { initial, velocity } => {
                Some(Ok(initial.iter().map(|x| x + velocity * t).collect()))
            }
            BaseMotion::Integrated { .. } => None,
        }
    }
}

/// `N` filaments sampled on a common grid, together with their base trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct FilamentField<T: Real> {
    pub grid: Grid1D<T>,
    pub fields: Vec<ComplexField<T>>,
    pub circulations: Vec<T>,
    pub core: Vec<T>,
    pub base: BaseMotion<T>,
    /// `X_j` at the current time.
    pub base_positions: Vec<Complex<T>>,
    pub time: T,
    pub representation: Representation,
}

impl<T: Real> FilamentField<T> {
    /// Perturbation data `u_j` around the trajectory starting from `state`.
    pub fn perturbation(
        grid: Grid1D<T>,
        state: &PointVortexState<T>,
        base: BaseMotion<T>,
        fields: Vec<ComplexField<T>>,
    ) -> Result<Self> {
        Self::build(grid, state, base, fields, Representation::Perturbation)
    }

    /// Absolute filament positions `Ψ_j`.
    pub fn absolute(
        grid: Grid1D<T>,
        state: &PointVortexState<T>,
        base: BaseMotion<T>,
        fields: Vec<ComplexField<T>>,
    ) -> Result<Self> {
        Self::build(grid, state, base, fields, Representation::Absolute)
    }

    /// Perturbation field with `u_j ≡ 0`.
    pub fn parallel(grid: Grid1D<T>, state: &PointVortexState<T>, base: BaseMotion<T>) -> Result<Self> {
        let m = grid.points();
        let fields = vec![ComplexField::zeros(m); state.len()];
        Self::perturbation(grid, state, base, fields)
    }

    fn build(
        grid: Grid1D<T>,
        state: &PointVortexState<T>,
        base: BaseMotion<T>,
        fields: Vec<ComplexField<T>>,
        representation: Representation,
    ) -> Result<Self> {
        let n = state.len();
        if fields.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: fields.len() });
        }
        if base.initial().len() != n {
            return Err(Error::LengthMismatch { expected: n, found: base.initial().len() });
        }
        for f in &fields {
            grid.check_len(f.len())?;
            if !f.is_finite() {
                return usage("filament fields must be finite");
            }
        }
        let base_positions = match base.positions_at(state.time) {
            Some(x) => x?,
            None => state.positions.clone(),
        };
        Ok(FilamentField {
            grid,
            fields,
            circulations: state.circulations.clone(),
            core: state.core.clone(),
            base,
            base_positions,
            time: state.time,
            representation,
        })
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    /// Dispersion coefficients `α_j Γ_j`.
    pub fn dispersion(&self) -> Vec<T> {
        self.core.iter().zip(&self.circulations).map(|(a, g)| *a * *g).collect()
    }

    /// Filament positions `Ψ_j`.
    pub fn positions(&self) -> Vec<ComplexField<T>> {
        match self.representation {
            Representation::Absolute => self.fields.clone(),
            Representation::Perturbation => self
                .fields
                .iter()
                .zip(&self.base_positions)
                .map(|(u, &x)| u.map(|z| z + x))
                .collect(),
        }
    }

    /// Perturbations `u_j = Ψ_j - X_j`.
    pub fn perturbations(&self) -> Vec<ComplexField<T>> {
        match self.representation {
            Representation::Perturbation => self.fields.clone(),
            Representation::Absolute => self
                .fields
                .iter()
                .zip(&self.base_positions)
                .map(|(u, &x)| u.map(|z| z - x))
                .collect(),
        }
    }

    /// Same filaments stored in the other representation.
    pub fn to_representation(&self, representation: Representation) -> Self {
        let mut out = self.clone();
        out.fields = match representation {
            Representation::Absolute => self.positions(),
            Representation::Perturbation => self.perturbations(),
        };
        out.representation = representation;
        out
    }

    pub fn point_vortex_state(&self) -> Result<PointVortexState<T>> {
        let mut s = PointVortexState::with_core(self.base_positions.clone(), self.circulations.clone(), self.core.clone())?;
        s.time = self.time;
        Ok(s)
    }
}
