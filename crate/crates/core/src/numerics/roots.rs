use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Bracketed root of `f` on `[a, b]`.
///
/// Illinois regula falsi with a bisection fallback; stops once the bracket
/// is narrower than `tol` (relative to `max(1, |x|)`) or `f` vanishes.
pub fn find_root<T, F>(mut f: F, a: T, b: T, tol: T) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(Error::NonFinite(" at root bracket".into()));
    }
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NotBracketed { a: to_f64(a), b: to_f64(b) });
    }
    let half = lit::<T>(0.5);
    let mut side = 0i8;
    let mut width = (b - a).abs();
    for _ in 0..400 {
        let scale = T::one().max(a.abs().max(b.abs()));
        if (b - a).abs() <= tol * scale {
            break;
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        let lo = a.min(b);
        let hi = a.max(b);
        if !(x > lo && x < hi) {
            x = (a + b) * half;
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite(" during root search".into()));
        }
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if side == -1 {
                fa = fa * half;
            }
            side = -1;
        } else {
            a = x;
            fa = fx;
            if side == 1 {
                fb = fb * half;
            }
            side = 1;
        }
        let w = (b - a).abs();
        if w > width * lit(0.75) {
            let m = (a + b) * half;
            let fm = f(m);
            if fm == T::zero() {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
            side = 0;
        }
        width = (b - a).abs();
    }
    let scale = T::one().max(a.abs().max(b.abs()));
    if (b - a).abs() <= tol * scale * lit(4.0) || fa.abs().min(fb.abs()) == T::zero() {
        Ok(if fa.abs() < fb.abs() { a } else { b })
    } else {
        Err(Error::NoConvergence("root search exhausted its iterations".into()))
    }
}
