use num_complex::Complex;

use crate::error::{usage, Result};
use crate::filaments::{BaseMotion, FilamentField, Representation};
use crate::numerics::{ComplexField, Grid1D};
use crate::pointvortex::PointVortexState;
use crate::scalar::{lit, Real};

/// A Galilean-boosted configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Boosted<T: Real> {
    /// Boosted positions, absolute representation.
    pub field: FilamentField<T>,
    /// Boost actually applied: the requested one rounded to a multiple of `2π/L`.
    pub nu: T,
    /// `2tν` divided by the grid spacing.
    pub shift_nodes: T,
    /// Whether the shift was applied as an exact node roll.
    pub snapped: bool,
}

/// `Ψ_{j,ν}(t, σ) = e^{-itν² + iνσ} Ψ_j(t, σ - 2tν)`.
///
/// `ν` is rounded to the nearest multiple of `2π/L` so the boosted data stay
/// periodic. The shift is a node roll when it is a whole number of nodes and
/// an exact Fourier translation otherwise.
pub fn galilean_boost<T: Real>(f: &FilamentField<T>, nu: T) -> Result<Boosted<T>> {
    let grid = &f.grid;
    let base = T::TAU() / grid.length();
    let nu = (nu / base).round() * base;
    let t = f.time;
    let shift = lit::<T>(2.0) * t * nu;
    let nodes = shift / grid.spacing();
    let whole = nodes.round();
    let snapped = (nodes - whole).abs() <= lit(1e-9);
    let phase = -t * nu * nu;
    let m = grid.points();
    let sigma = grid.nodes();
    let mut fields = Vec::with_capacity(f.len());
    for psi in f.positions() {
        let moved: Vec<Complex<T>> = if snapped {
            let r = whole.to_i64().unwrap_or(0).rem_euclid(m as i64) as usize;
            (0..m).map(|i| psi[(i + m - r) % m]).collect()
        } else {
            grid.apply_multiplier(&psi, |_, k| Complex::from_polar(T::one(), -k * shift))?
        };
        fields.push(ComplexField::new(
            moved.into_iter().zip(&sigma).map(|(z, &s)| z * Complex::from_polar(T::one(), phase + nu * s)).collect(),
        ));
    }
    let mut field = f.clone();
    field.fields = fields;
    field.representation = Representation::Absolute;
    Ok(Boosted { field, nu, shift_nodes: nodes, snapped })
}

/// Unit-circulation square `X = (1, i, -1, -i)` with perturbations
/// `(u_1, u_2, -u_1, -u_2)`.
pub fn parallelogram_perturbation<T: Real>(
    grid: Grid1D<T>,
    u1: ComplexField<T>,
    u2: ComplexField<T>,
) -> Result<FilamentField<T>> {
    if u1.len() != grid.points() || u2.len() != grid.points() {
        return usage("perturbations must live on the grid");
    }
    let (one, zero) = (T::one(), T::zero());
    let x = vec![Complex::new(one, zero), Complex::new(zero, one), Complex::new(-one, zero), Complex::new(zero, -one)];
    let state = PointVortexState::new(x.clone(), vec![one; 4])?;
    let omega = lit::<T>(3.0) / lit(2.0);
    let neg = |u: &ComplexField<T>| u.map(|z| -z);
    let fields = vec![u1.clone(), u2.clone(), neg(&u1), neg(&u2)];
    FilamentField::perturbation(grid, &state, BaseMotion::rotating(x, Complex::new(zero, zero), omega), fields)
}
