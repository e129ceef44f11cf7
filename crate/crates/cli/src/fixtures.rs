//! Initial data shared by scenarios, verification suites and acceptance checks.

use num_complex::Complex64;
use vortexlab_core::binormal::Curve3D;
use vortexlab_core::collapse::GaussianTail;
use vortexlab_core::numerics::ComplexField;
use vortexlab_core::{Field, Grid, Result};

pub fn c64(z: [f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

/// `amp e^{-((σ - centre)/width)²}`.
pub fn gaussian(grid: &Grid, amp: Complex64, centre: f64, width: f64) -> Field {
    ComplexField::from_fn(grid, |s| amp * (-((s - centre) / width).powi(2)).exp())
}

/// Free evolution of `amp e^{-(σ/width)²}` under `u_t = iκ u_σσ`.
pub fn free_gaussian(amp: Complex64, width: f64, kappa: f64, t: f64, s: f64) -> Complex64 {
    let d = Complex64::new(1.0, 4.0 * kappa * t / (width * width));
    amp * (-(s * s) / (d * width * width)).exp() / d.sqrt()
}

/// `1 - e^{-σ²/d}/√d` with `d = 1 - 4i`, which vanishes at `t = 1, σ = 0` under the free flow.
pub fn gaussian_collapse_datum(s: f64) -> Complex64 {
    let d = Complex64::new(1.0, -4.0);
    1.0 - (-(s * s) / d).exp() / d.sqrt()
}

/// Two off-centre bumps projected onto the tail space of the collapsing profile.
pub fn collapse_tail(grid: &Grid, eps: f64) -> Result<GaussianTail<f64>> {
    let u = ComplexField::from_fn(grid, |y| Complex64::new(eps * (-(y - 2.0) * (y - 2.0)).exp(), 0.0));
    let v = ComplexField::from_fn(grid, |y| Complex64::new(0.0, eps * (-(y + 3.0) * (y + 3.0) / 2.0).exp()));
    GaussianTail::project(grid, &u, &v)
}

/// Circle of radius `r`, resampled at uniform arclength.
pub fn circle(r: f64, points: usize) -> Result<Curve3D<f64>> {
    Curve3D::closed_from_parametric(|u: f64| [r * u.cos(), r * u.sin(), 0.0], |u: f64| [-r * u.sin(), r * u.cos(), 0.0], points)
}

/// One period of the helix `(r cos ws, r sin ws, b s)` with `r²w² + b² = 1`.
pub fn helix(r: f64, w: f64, points: usize) -> Result<Curve3D<f64>> {
    let b = (1.0 - r * r * w * w).sqrt();
    let h = std::f64::consts::TAU / w / points as f64;
    let s: Vec<f64> = (0..points).map(|m| m as f64 * h).collect();
    let x = s.iter().map(|&s| [r * (w * s).cos(), r * (w * s).sin(), b * s]).collect();
    let t = s.iter().map(|&s| [-r * w * (w * s).sin(), r * w * (w * s).cos(), b]).collect();
    Curve3D::from_tangents(0.0, h, true, x, t)
}

/// A smooth non-planar closed curve.
pub fn knot(points: usize) -> Result<Curve3D<f64>> {
    Curve3D::closed_from_parametric(
        |u: f64| [u.cos() + 0.3 * (2.0 * u).cos(), u.sin() - 0.3 * (2.0 * u).sin(), 0.5 * (3.0 * u).sin()],
        |u: f64| [-u.sin() - 0.6 * (2.0 * u).sin(), u.cos() - 0.6 * (2.0 * u).cos(), 1.5 * (3.0 * u).cos()],
        points,
    )
}

pub fn centroid(x: &[[f64; 3]]) -> [f64; 3] {
    let mut acc = [0.0; 3];
    for p in x {
        for k in 0..3 {
            acc[k] += p[k];
        }
    }
    acc.map(|v| v / x.len() as f64)
}
