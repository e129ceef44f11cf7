use crate::binormal::vec3::{add, cross, dot, normalize, scale, sub, Vec3};
use crate::binormal::Curve3D;
use crate::error::{usage, Result};
use crate::numerics::rk4_step;
use crate::scalar::{count, lit, Real};

/// Position and (tangent, normal) at arclength `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameInit<T> {
    pub s: T,
    pub x: Vec3<T>,
    pub tangent: Vec3<T>,
    pub normal: Vec3<T>,
}

impl<T: Real> FrameInit<T> {
    /// The standard frame at the origin, placed at arclength `s`.
    pub fn standard(s: T) -> Self {
        let (o, l) = (T::zero(), T::one());
        FrameInit { s, x: [o, o, o], tangent: [l, o, o], normal: [o, l, o] }
    }
}

/// `(T, N, B, χ)` packed for the Runge–Kutta stepper.
type State<T> = [T; 12];

fn unpack<T: Real>(y: &State<T>, k: usize) -> Vec3<T> {
    [y[3 * k], y[3 * k + 1], y[3 * k + 2]]
}

fn pack<T: Real>(t: Vec3<T>, n: Vec3<T>, b: Vec3<T>, x: Vec3<T>) -> State<T> {
    let mut y = [T::zero(); 12];
    for (k, v) in [t, n, b, x].into_iter().enumerate() {
        y[3 * k..3 * k + 3].copy_from_slice(&v);
    }
    y
}

fn orthonormalize<T: Real>(y: &State<T>) -> State<T> {
    let t = normalize(unpack(y, 0));
    let n0 = unpack(y, 1);
    let n = normalize(sub(n0, scale(dot(n0, t), t)));
    pack(t, n, cross(t, n), unpack(y, 3))
}

/// Largest step relative to the local frame rotation rate.
const ROTATION_STEP: f64 = 0.02;

/// Advances the frame from `s` to `target`.
fn advance<T, C, U>(y: &mut State<T>, s: &mut T, target: T, c: &C, tau: &U) -> Result<()>
where
    T: Real,
    C: Fn(T) -> T,
    U: Fn(T) -> T,
{
    let span = target - *s;
    if span == T::zero() {
        return Ok(());
    }
    let mid = *s + span / lit(2.0);
    let rate = [*s, mid, target]
        .into_iter()
        .map(|r| (c(r) * c(r) + tau(r) * tau(r)).sqrt())
        .fold(T::zero(), T::max);
    let sub_steps = (span.abs() * rate / lit(ROTATION_STEP)).ceil().to_usize().unwrap_or(1).max(1);
    let h = span / count(sub_steps);
    let start = *s;
    for i in 0..sub_steps {
        let r = start + h * count(i);
        let next = rk4_step(y, r, h, |r, y: &State<T>| {
            let (t, n, b) = (unpack(y, 0), unpack(y, 1), unpack(y, 2));
            let (k, w) = (c(r), tau(r));
            Ok(pack(scale(k, n), sub(scale(w, b), scale(k, t)), scale(-w, n), t))
        })?;
        *y = orthonormalize(&next);
    }
    *s = target;
    Ok(())
}

/// Integrates the Frenet system `T' = cN, N' = -cT + τB, B' = -τN`, `χ' = T`
/// on `points` uniform nodes spanning `[s_start, s_end]`.
///
/// The curvature and torsion stored on the curve are the given functions
/// evaluated at the nodes.
pub fn frenet_integrate<T, C, U>(c: C, tau: U, s_start: T, s_end: T, points: usize, init: FrameInit<T>) -> Result<Curve3D<T>>
where
    T: Real,
    C: Fn(T) -> T,
    U: Fn(T) -> T,
{
    if points < 4 || !(s_end > s_start) {
        return usage("frenet_integrate needs an increasing range and at least four nodes");
    }
    if !(init.s >= s_start && init.s <= s_end) {
        return usage("initial frame must lie inside the range");
    }
    let h = (s_end - s_start) / count(points - 1);
    let node = |m: usize| s_start + h * count(m);
    let t0 = normalize(init.tangent);
    let n0 = normalize(sub(init.normal, scale(dot(init.normal, t0), t0)));
    let y0 = pack(t0, n0, cross(t0, n0), init.x);
    let mut states: Vec<Option<State<T>>> = vec![None; points];
    let split = (0..points).find(|&m| node(m) >= init.s).unwrap_or(points);
    let (mut y, mut s) = (y0, init.s);
    for m in split..points {
        advance(&mut y, &mut s, node(m), &c, &tau)?;
        states[m] = Some(y);
    }
    let (mut y, mut s) = (y0, init.s);
    for m in (0..split).rev() {
        advance(&mut y, &mut s, node(m), &c, &tau)?;
        states[m] = Some(y);
    }
    let states: Vec<State<T>> = states.into_iter().map(|y| y.unwrap_or(y0)).collect();
    let nodes: Vec<T> = (0..points).map(node).collect();
    Ok(Curve3D {
        s0: s_start,
        h,
        periodic: false,
        x: states.iter().map(|y| unpack(y, 3)).collect(),
        tangent: states.iter().map(|y| unpack(y, 0)).collect(),
        normal: states.iter().map(|y| unpack(y, 1)).collect(),
        binormal: states.iter().map(|y| unpack(y, 2)).collect(),
        curvature: nodes.iter().map(|&r| c(r)).collect(),
        torsion: nodes.iter().map(|&r| tau(r)).collect(),
    })
}

/// Tangent directions `A±` at `±∞` and the angle between `A⁺` and `-A⁻`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerAngle<T> {
    pub a_plus: Vec3<T>,
    pub a_minus: Vec3<T>,
    pub theta: T,
}

impl<T: Real> CornerAngle<T> {
    pub fn sin_half(&self) -> T {
        (self.theta / lit(2.0)).sin()
    }
}

/// Averages the tangent over `[S, 2S]` and `[-2S, -S]` on a curve whose range covers both windows.
pub fn corner_angle<T: Real>(curve: &Curve3D<T>, window: T) -> Result<CornerAngle<T>> {
    let two = lit::<T>(2.0);
    let last = curve.s(curve.len() - 1);
    if !(window > T::zero()) || curve.s0 > -two * window || last < two * window {
        return usage("curve does not cover the averaging windows");
    }
    let mean = |lo: T, hi: T| {
        let (a, b) = (curve.nearest(lo), curve.nearest(hi));
        let mut acc = [T::zero(); 3];
        for m in a..=b {
            let w = if m == a || m == b { lit(0.5) } else { T::one() };
            acc = add(acc, scale(w, curve.tangent[m]));
        }
        scale(T::one() / count(b - a), acc)
    };
    let a_plus = mean(window, two * window);
    let a_minus = mean(-two * window, -window);
    let cos = dot(normalize(a_plus), scale(-T::one(), normalize(a_minus)));
    let theta = cos.max(-T::one()).min(T::one()).acos();
    Ok(CornerAngle { a_plus, a_minus, theta })
}
