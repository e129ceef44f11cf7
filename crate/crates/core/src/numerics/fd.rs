//! Central finite differences for non-periodic samples.

use std::ops::{Add, Mul, Sub};

use crate::scalar::{lit, Real};

const D1: [&[f64]; 4] = [
    &[0.5],
    &[2.0 / 3.0, -1.0 / 12.0],
    &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
    &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
];
const D2_CENTRE: [f64; 4] = [-2.0, -5.0 / 2.0, -49.0 / 18.0, -205.0 / 72.0];
const D2: [&[f64]; 4] = [
    &[1.0],
    &[4.0 / 3.0, -1.0 / 12.0],
    &[3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0],
    &[8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0],
];

/// Half-width of the widest stencil; nodes closer than this to an end use lower order.
pub const FD_HALF_WIDTH: usize = 4;

fn width_at(m: usize, n: usize, max_half: usize) -> usize {
    m.min(n - 1 - m).min(max_half)
}

/// First derivative, eighth order in the interior.
pub fn fd_d1<T, V>(f: &[V], h: T) -> Vec<V>
where
    T: Real,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    fd_d1_order(f, h, 8)
}

/// First derivative with interior order `order` (2, 4, 6 or 8).
pub fn fd_d1_order<T, V>(f: &[V], h: T, order: usize) -> Vec<V>
where
    T: Real,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    let n = f.len();
    let max_half = (order / 2).clamp(1, FD_HALF_WIDTH);
    let inv = T::one() / h;
    (0..n)
        .map(|m| {
            if n < 3 {
                return f[m] * T::zero();
            }
            let w = width_at(m, n, max_half);
            if w == 0 {
                let (a, b, c) = if m == 0 { (f[0], f[1], f[2]) } else { (f[n - 1], f[n - 2], f[n - 3]) };
                let sign = if m == 0 { T::one() } else { -T::one() };
                return (b * lit(4.0) - a * lit(3.0) - c) * (sign * inv / lit(2.0));
            }
            let mut acc = (f[m + 1] - f[m - 1]) * lit(D1[w - 1][0]);
            for (j, &cj) in D1[w - 1].iter().enumerate().skip(1) {
                acc = acc + (f[m + j + 1] - f[m - j - 1]) * lit(cj);
            }
            acc * inv
        })
        .collect()
}

/// Second derivative, eighth order in the interior.
pub fn fd_d2<T, V>(f: &[V], h: T) -> Vec<V>
where
    T: Real,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    fd_d2_order(f, h, 8)
}

pub fn fd_d2_order<T, V>(f: &[V], h: T, order: usize) -> Vec<V>
where
    T: Real,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    let n = f.len();
    let max_half = (order / 2).clamp(1, FD_HALF_WIDTH);
    let inv = T::one() / (h * h);
    (0..n)
        .map(|m| {
            if n < 4 {
                return f[m] * T::zero();
            }
            let w = width_at(m, n, max_half);
            if w == 0 {
                let g = |j: usize| if m == 0 { f[j] } else { f[n - 1 - j] };
                return (g(0) * lit(2.0) - g(1) * lit(5.0) + g(2) * lit(4.0) - g(3)) * inv;
            }
            let mut acc = f[m] * lit(D2_CENTRE[w - 1]);
            for (j, &cj) in D2[w - 1].iter().enumerate() {
                acc = acc + (f[m + j + 1] + f[m - j - 1]) * lit(cj);
            }
            acc * inv
        })
        .collect()
}

/// Weights of the derivatives `0..=order` at `z` from samples at `x` (Fornberg's recursion).
pub fn fd_weights(z: f64, x: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}
