use crate::scalar::Real;

pub type Vec3<T> = [T; 3];

pub fn add<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale<T: Real>(k: T, a: Vec3<T>) -> Vec3<T> {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn dot<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm<T: Real>(a: Vec3<T>) -> T {
    dot(a, a).sqrt()
}

pub fn normalize<T: Real>(a: Vec3<T>) -> Vec3<T> {
    scale(T::one() / norm(a), a)
}

/// Any unit vector orthogonal to the unit vector `t`.
pub fn orthogonal<T: Real>(t: Vec3<T>) -> Vec3<T> {
    let axis = if t[0].abs() <= t[1].abs() && t[0].abs() <= t[2].abs() {
        [T::one(), T::zero(), T::zero()]
    } else if t[1].abs() <= t[2].abs() {
        [T::zero(), T::one(), T::zero()]
    } else {
        [T::zero(), T::zero(), T::one()]
    };
    normalize(sub(axis, scale(dot(axis, t), t)))
}
