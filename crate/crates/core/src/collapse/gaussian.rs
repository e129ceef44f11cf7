use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::filaments::{BaseMotion, FilamentField};
use crate::numerics::{quad_trapezoid, ComplexField, Grid1D};
use crate::pointvortex::{polygon_equilibrium, ThreeVortexCollapse};
use crate::scalar::{count, lit, Real};

/// `Φ(t, σ) = 1 - e^{-σ²/(1 - 4i(1 - t))}/√(1 - 4i(1 - t))`, vanishing at `(1, 0)`.
pub fn gaussian_collapse<T: Real>(t: T, sigma: T) -> Complex<T> {
    let d = Complex::new(T::one(), -lit::<T>(4.0) * (T::one() - t));
    Complex::new(T::one(), T::zero()) - (-Complex::new(sigma * sigma, T::zero()) / d).exp() / d.sqrt()
}

/// A tail `u0` with `∫e^{iy²/8}u0(y)dy = 0`, so that `e^{2i∂²}u0(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTail<T: Real> {
    pub u0: ComplexField<T>,
    /// `|∫e^{iy²/8}u0| / ∫|u0|` as measured on the grid.
    pub moment: T,
}

fn moment<T: Real>(grid: &Grid1D<T>, u: &ComplexField<T>) -> Complex<T> {
    let w: Vec<_> = grid
        .nodes()
        .iter()
        .zip(u.iter())
        .map(|(&y, &z)| Complex::from_polar(T::one(), y * y / lit(8.0)) * z)
        .collect();
    quad_trapezoid(&w, grid)
}

impl<T: Real> GaussianTail<T> {
    /// Accepts `u0` if its normalized moment is below `tol`.
    pub fn new(grid: &Grid1D<T>, u0: ComplexField<T>, tol: T) -> Result<Self> {
        grid.check_len(u0.len())?;
        let l1 = grid.spacing() * u0.iter().map(|z| z.norm()).sum::<T>();
        if !(l1 > T::zero()) {
            return usage("tail must be non-zero");
        }
        let m = moment(grid, &u0).norm() / l1;
        if m > tol {
            return Err(Error::Inadmissible(format!("tail moment {m:e} exceeds {tol:e}")));
        }
        Ok(GaussianTail { u0, moment: m })
    }

    /// `u - λv` with `λ` chosen to cancel the moment.
    pub fn project(grid: &Grid1D<T>, u: &ComplexField<T>, v: &ComplexField<T>) -> Result<Self> {
        grid.check_len(u.len())?;
        grid.check_len(v.len())?;
        let mv = moment(grid, v);
        if mv.norm() == T::zero() {
            return usage("projection direction has zero moment");
        }
        let lambda = moment(grid, u) / mv;
        Self::new(grid, u.zip_map(v, |a, b| a - lambda * b), lit(1e-10))
    }

    /// `e^{i(t+1)∂²}u0` on the grid.
    pub fn evolved(&self, grid: &Grid1D<T>, t: T) -> Result<ComplexField<T>> {
        Ok(ComplexField::new(grid.free_propagate(&self.u0, T::one(), t + T::one())?))
    }
}

/// Closed-form profile on the grid, optionally with a tail.
pub fn gaussian_collapse_field<T: Real>(grid: &Grid1D<T>, t: T, tail: Option<&GaussianTail<T>>) -> Result<ComplexField<T>> {
    let phi = ComplexField::from_fn(grid, |s| gaussian_collapse(t, s));
    match tail {
        None => Ok(phi),
        Some(tail) => Ok(phi.zip_map(&tail.evolved(grid, t)?, |a, b| a + b)),
    }
}

/// A collapsing configuration of parallel filaments.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseCollapse<T: Real> {
    /// The self-similar three-vortex collapse, colliding at `τ`.
    ThreeVortex,
    /// `Ψ_j = X_jΦ` around the stationary centred `n`-polygon, colliding at `t = 1, σ = 0`.
    GaussianPolygon { n: usize, radius: T, tail: Option<GaussianTail<T>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedCollapse<T: Real> {
    pub field: FilamentField<T>,
    pub expected_time: T,
    pub expected_sigma: Option<T>,
}

/// Stationary `n`-polygon with the centre vortex `-(n - 1)/2` appended last.
pub fn stationary_polygon<T: Real>(n: usize, radius: T) -> Result<(crate::pointvortex::PointVortexState<T>, T)> {
    let gamma0 = -count::<T>(n - 1) / lit(2.0);
    polygon_equilibrium(n, T::one(), radius, Some(gamma0))
}

/// `Ψ_{j,0} + u0` for every filament of the base collapse.
///
/// The triangle uses `α_jΓ_j = 1` so that the common shift evolves freely.
pub fn shifted_collapse<T: Real>(grid: &Grid1D<T>, base: &BaseCollapse<T>, u0: &ComplexField<T>) -> Result<ShiftedCollapse<T>> {
    grid.check_len(u0.len())?;
    match base {
        BaseCollapse::ThreeVortex => {
            let sol = ThreeVortexCollapse::<T>::new();
            let mut state = sol.state(T::zero())?;
            state.core = state.circulations.iter().map(|g| T::one() / *g).collect();
            let fields = vec![u0.clone(); 3];
            let field = FilamentField::perturbation(grid.clone(), &state, BaseMotion::three_vortex(&sol), fields)?;
            Ok(ShiftedCollapse { field, expected_time: sol.tau, expected_sigma: None })
        }
        BaseCollapse::GaussianPolygon { n, radius, tail } => {
            if *n < 2 {
                return usage("the centred polygon needs n ≥ 2");
            }
            let (state, _) = stationary_polygon(*n, *radius)?;
            let phi = gaussian_collapse_field(grid, T::zero(), tail.as_ref())?;
            let fields = state
                .positions
                .iter()
                .map(|&x| phi.zip_map(u0, |p, u| x * (p - T::one()) + u))
                .collect();
            let base = BaseMotion::stationary(state.positions.clone());
            let field = FilamentField::perturbation(grid.clone(), &state, base, fields)?;
            Ok(ShiftedCollapse { field, expected_time: T::one(), expected_sigma: Some(T::zero()) })
        }
    }
}
