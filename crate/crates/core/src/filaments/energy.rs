use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::filaments::{FilamentField, Representation};
use crate::numerics::ComplexField;
use crate::scalar::{lit, Real};

/// Renormalised quantities of a filament configuration.
///
/// `H = ½Σ α_jΓ_j² ∫|∂_σΨ_j|² - ¼ ∫Σ_{j≠k} Γ_jΓ_k ln(|Ψ_j-Ψ_k|²/|X_j-X_k|²)`,
/// `I = ¼ ∫Σ_{j≠k} Γ_jΓ_k (|Ψ_j-Ψ_k|²/|X_j-X_k|² - 1)`, `E = H + I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormalizedQuantities<T> {
    pub h: T,
    /// `∫Σ Γ_j (|Ψ_j|² - |X_j|²)`.
    pub a: T,
    /// `∫Σ_{j≠k} Γ_jΓ_k (|Ψ_j-Ψ_k|² - |X_j-X_k|²)`.
    pub t: T,
    pub i: T,
    pub e: T,
    /// `∫Σ Γ_j (Ψ_j - X_j)`.
    pub center: Complex<T>,
    /// Kinetic part of `H`.
    pub kinetic: T,
}

/// Extremes of `|Ψ_j - Ψ_k| / |X_j - X_k|` over nodes and pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationDetail<T> {
    pub min_ratio: T,
    pub max_ratio: T,
    pub min_distance: T,
    /// Pair and node attaining `min_ratio`.
    pub pair: (usize, usize),
    pub index: usize,
    /// Sub-grid location of the minimum from a parabola through the neighbouring nodes.
    pub sigma: T,
    /// `max |ratio² - 1|`.
    pub sup_deviation: T,
}

/// Pairwise differences `Ψ_j - Ψ_k` and base differences `X_j - X_k`.
fn pair_terms<T: Real>(f: &FilamentField<T>) -> Vec<((usize, usize), Complex<T>, Vec<Complex<T>>)> {
    let n = f.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            let d = f.base_positions[j] - f.base_positions[k];
            let delta: Vec<Complex<T>> = match f.representation {
                Representation::Perturbation => f.fields[j].iter().zip(f.fields[k].iter()).map(|(a, b)| *a - *b).collect(),
                Representation::Absolute => {
                    f.fields[j].iter().zip(f.fields[k].iter()).map(|(a, b)| *a - *b - d).collect()
                }
            };
            out.push(((j, k), d, delta));
        }
    }
    out
}

/// Smallest ratio (or distance) over all pairs at every node.
pub(crate) fn separation_profile<T: Real>(f: &FilamentField<T>, distance: bool) -> Vec<T> {
    let mut out = vec![T::infinity(); f.grid.points()];
    for (_, d, delta) in pair_terms(f) {
        let scale = if distance { T::one() } else { d.norm() };
        for (o, z) in out.iter_mut().zip(&delta) {
            *o = o.min((d + z).norm() / scale);
        }
    }
    out
}

pub fn separation_detail<T: Real>(f: &FilamentField<T>) -> Result<SeparationDetail<T>> {
    let mut s = SeparationDetail {
        min_ratio: T::infinity(),
        max_ratio: T::zero(),
        min_distance: T::infinity(),
        pair: (0, 0),
        index: 0,
        sigma: T::zero(),
        sup_deviation: T::zero(),
    };
    if f.len() < 2 {
        s.min_ratio = T::one();
        s.max_ratio = T::one();
        return Ok(s);
    }
    for ((j, k), d, delta) in pair_terms(f) {
        let dn = d.norm();
        if dn == T::zero() {
            return Err(Error::Coincident { j, k });
        }
        for (m, z) in delta.iter().enumerate() {
            let w = (d + z).norm();
            let r = w / dn;
            if r < s.min_ratio {
                s.min_ratio = r;
                s.pair = (j, k);
                s.index = m;
            }
            s.max_ratio = s.max_ratio.max(r);
            s.min_distance = s.min_distance.min(w);
            s.sup_deviation = s.sup_deviation.max((r * r - T::one()).abs());
        }
    }
    let terms = pair_terms(f);
    let (_, d, delta) = terms.iter().find(|t| t.0 == s.pair).expect("minimising pair");
    let m = delta.len();
    let q = |i: usize| (*d + delta[i % m]).norm_sqr();
    let (a, b, c) = (q(s.index + m - 1), q(s.index), q(s.index + 1));
    let h = f.grid.spacing();
    let curv = a - lit::<T>(2.0) * b + c;
    let shift = if curv > T::zero() { (a - c) / (lit::<T>(2.0) * curv) } else { T::zero() };
    s.sigma = f.grid.node(s.index) + h * shift.max(-lit::<T>(0.5)).min(lit(0.5));
    Ok(s)
}

/// `(min, max)` of `|Ψ_j - Ψ_k| / |X_j - X_k|`.
pub fn separation_stats<T: Real>(f: &FilamentField<T>) -> Result<(T, T)> {
    let s = separation_detail(f)?;
    Ok((s.min_ratio, s.max_ratio))
}

pub fn renormalized_quantities<T: Real>(f: &FilamentField<T>) -> Result<RenormalizedQuantities<T>> {
    let grid = &f.grid;
    let h = grid.spacing();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let mut kinetic = T::zero();
    for (j, u) in f.fields.iter().enumerate() {
        let du = grid.d1(u)?;
        let s: T = du.iter().map(|z| z.norm_sqr()).sum();
        kinetic += half * f.core[j] * f.circulations[j] * f.circulations[j] * s * h;
    }
    let mut a = T::zero();
    let mut center = Complex::new(T::zero(), T::zero());
    for (j, field) in f.fields.iter().enumerate() {
        let x = f.base_positions[j];
        let g = f.circulations[j];
        for z in field.iter() {
            let u = match f.representation {
                Representation::Perturbation => *z,
                Representation::Absolute => *z - x,
            };
            a += g * (u.norm_sqr() + two * (x.conj() * u).re);
            center = center + u * g;
        }
    }
    a = a * h;
    center = center * h;
    let mut log = T::zero();
    let mut tm = T::zero();
    let mut im = T::zero();
    for ((j, k), d, delta) in pair_terms(f) {
        let gg = f.circulations[j] * f.circulations[k];
        let d2 = d.norm_sqr();
        if d2 == T::zero() {
            return Err(Error::Coincident { j, k });
        }
        for (m, z) in delta.iter().enumerate() {
            let e = z.norm_sqr() + two * (d.conj() * z).re;
            let x = e / d2;
            if !(x > -T::one()) {
                return Err(Error::SingularPotential { j, k, index: m });
            }
            log += gg * x.ln_1p();
            tm += gg * e;
            im += gg * x;
        }
    }
    let hh = kinetic - half * log * h;
    let i = half * im * h;
    Ok(RenormalizedQuantities { h: hh, a, t: two * tm * h, i, e: hh + i, center, kinetic })
}

fn norm_sq<T: Real>(f: &FilamentField<T>, terms: &[(usize, T)], u: &[ComplexField<T>]) -> T {
    let m = f.grid.points();
    let mut s = T::zero();
    for i in 0..m {
        let z = terms.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &(j, c)| acc + u[j][i] * c);
        s += z.norm_sqr();
    }
    s * f.grid.spacing()
}

/// Square-configuration energy `H + (T/2 - A + (‖u_1+u_3‖² + ‖u_2+u_4‖²)/2)/4`.
///
/// Equal to `E` when the base is the unit-circulation square.
pub fn square_energy<T: Real>(f: &FilamentField<T>) -> Result<T> {
    if f.len() != 4 {
        return usage(format!("square energy needs four filaments, got {}", f.len()));
    }
    let q = renormalized_quantities(f)?;
    let u = f.perturbations();
    let one = T::one();
    let s = (norm_sq(f, &[(0, one), (2, one)], &u) + norm_sq(f, &[(1, one), (3, one)], &u)) / lit(2.0);
    Ok(q.h + (q.t / lit(2.0) - q.a + s) / lit(4.0))
}

/// `-H + I - (3/2)A + (3/4)(‖u_1‖² + ‖u_2+u_3‖²)` for three collinear filaments.
///
/// A diagnostic only; it is not conserved in general.
pub fn segment_energy<T: Real>(f: &FilamentField<T>) -> Result<T> {
    if f.len() != 3 {
        return usage(format!("segment diagnostic needs three filaments, got {}", f.len()));
    }
    let q = renormalized_quantities(f)?;
    let u = f.perturbations();
    let one = T::one();
    let s = norm_sq(f, &[(0, one)], &u) + norm_sq(f, &[(1, one), (2, one)], &u);
    Ok(-q.h + q.i - lit::<T>(1.5) * q.a + lit::<T>(0.75) * s)
}

/// The hexagon combination with the triple and opposite-pair sums. Diagnostic only.
pub fn hexagon_energy<T: Real>(f: &FilamentField<T>) -> Result<T> {
    if f.len() != 6 {
        return usage(format!("hexagon diagnostic needs six filaments, got {}", f.len()));
    }
    let q = renormalized_quantities(f)?;
    let u = f.perturbations();
    let one = T::one();
    let triples = norm_sq(f, &[(0, one), (2, one), (4, one)], &u) + norm_sq(f, &[(1, one), (3, one), (5, one)], &u);
    let pairs: T = (0..3).map(|j| norm_sq(f, &[(j, one), (j + 3, one)], &u)).sum();
    Ok(-q.h + q.i - lit::<T>(3.5) * q.a + lit::<T>(2.0 / 3.0) * triples + lit::<T>(0.75) * pairs)
}

/// Sample points of `[lo, hi]` (spacing `step`) where the bounds
/// `(x - 1)²/2 ≤ x - 1 - ln x ≤ 10(x - 1)²` fail, as `(lower, upper)`.
pub fn convexity_violations(lo: f64, hi: f64, step: f64) -> (Vec<f64>, Vec<f64>) {
    let n = ((hi - lo) / step).round() as usize;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for m in 0..=n {
        let x = lo + m as f64 * step;
        let mid = x - 1.0 - x.ln();
        let q = (x - 1.0) * (x - 1.0);
        if q / 2.0 > mid + 1e-15 {
            lower.push(x);
        }
        if mid > 10.0 * q + 1e-15 {
            upper.push(x);
        }
    }
    (lower, upper)
}
