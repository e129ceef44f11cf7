use num_complex::Complex64;

use crate::error::{usage, Error, Result};
use crate::numerics::integrate_gl;
use crate::scalar::{to_f64, Real};

/// Result of [`cw_amplitude`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwAmplitude {
    /// `(4it)^{p/2} e^{it∂²}|x|^{-p}` at `σ = 0`.
    pub value: Complex64,
    /// Cut-off `Y` between quadrature and the asymptotic tail.
    pub cutoff: f64,
    /// Bound on the neglected tail remainder, in amplitude units.
    pub remainder: f64,
}

/// Normalized free evolution of `|x|^{-p}` at the origin,
/// `(4it)^{p/2}(4πit)^{-1/2} ∫e^{iy²/4t}|y|^{-p}dy`.
///
/// `[0, 1]` is integrated after `y = z^{1/(1-p)}`, `[1, Y]` by Gauss–Legendre
/// panels resolving the phase, and `[Y, ∞)` by two integrations by parts.
pub fn cw_amplitude<T: Real>(p: T, t: T, tol: T) -> Result<CwAmplitude> {
    let (p, t, tol) = (to_f64(p), to_f64(t), to_f64(tol));
    if !(p > 0.0 && p < 1.0) {
        return usage("cw_amplitude needs 0 < p < 1");
    }
    if !(t > 0.0) || !(tol > 0.0) {
        return usage("cw_amplitude needs t > 0 and tol > 0");
    }
    let i = Complex64::i();
    let a = 1.0 / (4.0 * t);
    let scale = (4.0 * t).powf(p / 2.0) / (4.0 * std::f64::consts::PI * t).sqrt();
    let tol_int = tol / (4.0 * scale);
    let cutoff = ((p + 1.0) / (4.0 * a * a * tol_int)).powf(1.0 / (p + 3.0)).max(2.0);
    let q = 1.0 / (1.0 - p);
    let inner = |order| {
        integrate_gl(|z: f64| (i * a * z.powf(2.0 * q)).exp() * q, 0.0, 1.0, 8, order)
    };
    let panels = ((4.0 * a * cutoff * (cutoff - 1.0)) / std::f64::consts::PI).ceil().max(16.0) as usize;
    let outer = |order| integrate_gl(|y: f64| (i * a * y * y).exp() * y.powf(-p), 1.0, cutoff, panels, order);
    let phase = (i * a * cutoff * cutoff).exp();
    let tail = -phase * cutoff.powf(-p - 1.0) / (2.0 * i * a)
        - phase * (p + 1.0) * cutoff.powf(-p - 3.0) / ((2.0 * i * a) * (2.0 * i * a));
    let remainder = 2.0 * scale * (p + 1.0) * cutoff.powf(-p - 3.0) / (4.0 * a * a);
    let coarse: Complex64 = inner(10)? + outer(10)?;
    let fine: Complex64 = inner(16)? + outer(16)?;
    let spread = 2.0 * scale * (fine - coarse).norm();
    if spread > tol {
        return Err(Error::NoConvergence(format!("cw quadrature spread {spread:e} exceeds {tol:e}")));
    }
    let integral = 2.0 * (fine + tail);
    let prefactor = Complex64::from_polar((4.0 * t).powf(p / 2.0), std::f64::consts::PI * p / 4.0)
        / (4.0 * std::f64::consts::PI * i * t).sqrt();
    Ok(CwAmplitude { value: prefactor * integral, cutoff, remainder })
}
