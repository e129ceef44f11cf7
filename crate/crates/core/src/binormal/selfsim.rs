use num_complex::Complex;

use crate::binormal::frenet::{frenet_integrate, FrameInit};
use crate::binormal::vec3::Vec3;
use crate::binormal::Curve3D;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// `χ_a(t)` on `points` nodes of `[s_start, s_end]`: curvature `a/√t`,
/// torsion `s/(2t)`, with `T(0) = e₁`, `N(0) = e₂` and `χ(t, 0) = 2a√t e₃`.
pub fn selfsimilar_profile<T: Real>(a: T, t: T, s_start: T, s_end: T, points: usize) -> Result<Curve3D<T>> {
    if !(t > T::zero()) {
        return Err(Error::Domain("self-similar profile needs t > 0".into()));
    }
    let root = t.sqrt();
    let c = a / root;
    let two = lit::<T>(2.0);
    let init = FrameInit { x: [T::zero(), T::zero(), two * a * root], ..FrameInit::standard(T::zero()) };
    frenet_integrate(move |_| c, move |s| s / (two * t), s_start, s_end, points, init)
}

/// `ψ_a(t, s) = (a/√t) e^{is²/(4t)}`.
pub fn selfsimilar_filament<T: Real>(a: T, t: T, s: T) -> Complex<T> {
    Complex::from_polar(a / t.sqrt(), s * s / (lit::<T>(4.0) * t))
}

/// Predicted corner: `sin(θ/2) = e^{-π a²/2}`.
pub fn corner_sin_half<T: Real>(a: T) -> T {
    (-T::PI() * a * a / lit(2.0)).exp()
}

/// `χ_a(0, s)`: two half-lines from the origin along `A±`.
pub fn corner_position<T: Real>(a_plus: Vec3<T>, a_minus: Vec3<T>, s: T) -> Vec3<T> {
    let v = if s >= T::zero() { a_plus } else { a_minus };
    [s * v[0], s * v[1], s * v[2]]
}
