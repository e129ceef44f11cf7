use num_complex::Complex;

use crate::binormal::curve::derivatives;
use crate::binormal::vec3::{cross, dot, norm, orthogonal, scale, sub, Vec3};
use crate::binormal::Curve3D;
use crate::error::{Error, Result};
use crate::numerics::ComplexField;
use crate::scalar::{lit, Real};

/// `ψ(s_m)` on the arclength grid of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FilamentFunction<T: Real> {
    pub s0: T,
    pub h: T,
    pub psi: ComplexField<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HasimotoBranch {
    /// `c e^{i∫τ}` from the curvature and torsion of the sampled tangent.
    Frenet,
    /// `α + iβ` from a parallel frame transported by double reflection.
    Parallel,
    /// Frenet when the curvature stays away from zero, otherwise parallel.
    Auto,
}

/// Curvature below which the Frenet construction is refused.
pub const MIN_CURVATURE: f64 = 1e-8;

/// Filament function with phase zero at the node nearest `s = 0`
/// (or at the first node when `0` is outside the grid).
pub fn hasimoto<T: Real>(curve: &Curve3D<T>, branch: HasimotoBranch) -> Result<FilamentFunction<T>> {
    let d1 = derivatives(&curve.tangent, curve.h, curve.periodic, 1)?;
    let c: Vec<T> = curve.tangent.iter().zip(&d1).map(|(t, d)| norm(sub(*d, scale(dot(*d, *t), *t)))).collect();
    let cmax = c.iter().copied().fold(T::zero(), T::max);
    let cmin = c.iter().copied().fold(T::infinity(), T::min);
    let origin = if curve.s0 <= T::zero() && curve.s(curve.len() - 1) >= T::zero() { curve.nearest(T::zero()) } else { 0 };
    let zero = Complex::new(T::zero(), T::zero());
    let use_frenet = match branch {
        HasimotoBranch::Frenet => {
            if !(cmin > lit(MIN_CURVATURE)) {
                return Err(Error::DegenerateCurve(
                    "curvature vanishes on the grid; use the parallel-frame branch".into(),
                ));
            }
            true
        }
        HasimotoBranch::Parallel => false,
        HasimotoBranch::Auto => {
            if !(cmax > lit(MIN_CURVATURE)) {
                return Ok(FilamentFunction { s0: curve.s0, h: curve.h, psi: ComplexField::constant(curve.len(), zero) });
            }
            cmin > lit(MIN_CURVATURE)
        }
    };
    let psi = if use_frenet {
        let d2 = derivatives(&curve.tangent, curve.h, curve.periodic, 2)?;
        let tau: Vec<T> = (0..curve.len())
            .map(|m| dot(cross(curve.tangent[m], d1[m]), d2[m]) / (c[m] * c[m]))
            .collect();
        let phase = cumulative_integral(&tau, curve.h, curve.periodic, origin)?;
        c.iter().zip(&phase).map(|(&c, &p)| Complex::from_polar(c, p)).collect()
    } else {
        let start = if c[origin] > lit(MIN_CURVATURE) { scale(T::one() / c[origin], sub(d1[origin], scale(dot(d1[origin], curve.tangent[origin]), curve.tangent[origin]))) } else { orthogonal(curve.tangent[origin]) };
        let e1 = parallel_transport(curve, origin, start);
        (0..curve.len())
            .map(|m| {
                let e2 = cross(curve.tangent[m], e1[m]);
                Complex::new(dot(d1[m], e1[m]), dot(d1[m], e2))
            })
            .collect()
    };
    Ok(FilamentFunction { s0: curve.s0, h: curve.h, psi: ComplexField::new(psi) })
}

/// Rotation-minimizing frame vector transported from node `origin` in both directions.
pub fn parallel_transport<T: Real>(curve: &Curve3D<T>, origin: usize, e: Vec3<T>) -> Vec<Vec3<T>> {
    let n = curve.len();
    let mut out = vec![e; n];
    for m in origin + 1..n {
        out[m] = reflect_twice(curve, m - 1, m, out[m - 1]);
    }
    for m in (0..origin).rev() {
        out[m] = reflect_twice(curve, m + 1, m, out[m + 1]);
    }
    out
}

fn reflect<T: Real>(v: Vec3<T>, w: Vec3<T>) -> Vec3<T> {
    let c = dot(v, v);
    if !(c > T::zero()) {
        return w;
    }
    sub(w, scale(lit::<T>(2.0) * dot(v, w) / c, v))
}

fn reflect_twice<T: Real>(curve: &Curve3D<T>, from: usize, to: usize, e: Vec3<T>) -> Vec3<T> {
    let v1 = sub(curve.x[to], curve.x[from]);
    let r = reflect(v1, e);
    let t = reflect(v1, curve.tangent[from]);
    let v2 = sub(curve.tangent[to], t);
    let out = reflect(v2, r);
    let tt = curve.tangent[to];
    let out = sub(out, scale(dot(out, tt), tt));
    scale(T::one() / norm(out), out)
}

/// Trapezoid rule with the first endpoint correction `-h²/12 (f'_{m+1} - f'_m)`.
fn cumulative_integral<T: Real>(f: &[T], h: T, periodic: bool, origin: usize) -> Result<Vec<T>> {
    let lifted: Vec<Vec3<T>> = f.iter().map(|&v| [v, T::zero(), T::zero()]).collect();
    let df: Vec<T> = derivatives(&lifted, h, periodic, 1)?.into_iter().map(|d| d[0]).collect();
    let n = f.len();
    let half = h / lit(2.0);
    let corr = h * h / lit(12.0);
    let step = |m: usize| half * (f[m] + f[m + 1]) - corr * (df[m + 1] - df[m]);
    let mut out = vec![T::zero(); n];
    for m in origin + 1..n {
        out[m] = out[m - 1] + step(m - 1);
    }
    for m in (0..origin.min(n)).rev() {
        out[m] = out[m + 1] - step(m);
    }
    Ok(out)
}
