use std::iter::Sum;
use std::ops::Mul;

use crate::error::{usage, Result};
use crate::numerics::Grid1D;
use crate::scalar::{count, lit, Real};

/// `h Σ f_m`, spectrally accurate for smooth periodic integrands.
pub fn quad_trapezoid<T, V>(values: &[V], grid: &Grid1D<T>) -> V
where
    T: Real,
    V: Copy + Sum + Mul<T, Output = V>,
{
    values.iter().copied().sum::<V>() * grid.spacing()
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out
}

/// Composite Gauss–Legendre quadrature of `f` over `[a, b]`.
pub fn integrate_gl<T, V, F>(f: F, a: T, b: T, panels: usize, order: usize) -> Result<V>
where
    T: Real,
    V: Copy + Sum + Mul<T, Output = V>,
    F: Fn(T) -> V,
{
    if panels == 0 || order == 0 {
        return usage("quadrature needs at least one panel and node");
    }
    let rule: Vec<(T, T)> = gauss_legendre(order).into_iter().map(|(x, w)| (lit(x), lit(w))).collect();
    let width = (b - a) / count(panels);
    let half = width / lit(2.0);
    let total = (0..panels)
        .flat_map(|p| {
            let mid = a + width * (count::<T>(p) + lit(0.5));
            rule.iter().map(move |&(x, w)| (mid + half * x, w * half))
        })
        .map(|(x, w)| f(x) * w)
        .sum();
    Ok(total)
}

/// Cumulative trapezoid integral of uniformly spaced samples, starting at index `origin`.
pub fn cumulative_trapezoid<T: Real>(values: &[T], h: T, origin: usize) -> Vec<T> {
    let n = values.len();
    let mut out = vec![T::zero(); n];
    let half = h / lit(2.0);
    for m in origin + 1..n {
        out[m] = out[m - 1] + half * (values[m - 1] + values[m]);
    }
    for m in (0..origin.min(n)).rev() {
        out[m] = out[m + 1] - half * (values[m] + values[m + 1]);
    }
    out
}
