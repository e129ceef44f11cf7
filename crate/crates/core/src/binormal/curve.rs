use num_complex::Complex;

use crate::binormal::vec3::{add, cross, dot, norm, normalize, orthogonal, scale, sub, Vec3};
use crate::error::{usage, Error, Result};
use crate::numerics::{fd_d1, fd_d2, fd_weights, ComplexField, Grid1D, FD_HALF_WIDTH};
use crate::scalar::{count, lit, Real};

/// A curve sampled on a uniform arclength grid `s_m = s0 + m h`, with its
/// Frenet frame, curvature and torsion.
///
/// Closed curves have period `M h` and need a power-of-two node count.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve3D<T> {
    pub s0: T,
    pub h: T,
    /// The tangent is periodic with period `M h`; `χ` may advance by a fixed offset per period.
    pub periodic: bool,
    pub x: Vec<Vec3<T>>,
    pub tangent: Vec<Vec3<T>>,
    pub normal: Vec<Vec3<T>>,
    pub binormal: Vec<Vec3<T>>,
    pub curvature: Vec<T>,
    pub torsion: Vec<T>,
}

/// Curvature below which the Frenet normal is replaced by a transported one.
pub(crate) const FLAT: f64 = 1e-12;

pub(crate) fn derivatives<T: Real>(v: &[Vec3<T>], h: T, periodic: bool, order: usize) -> Result<Vec<Vec3<T>>> {
    let m = v.len();
    let mut out = vec![[T::zero(); 3]; m];
    if periodic {
        let grid = Grid1D::new(h * count(m), m)?;
        let a = ComplexField::new(v.iter().map(|p| Complex::new(p[0], p[1])).collect());
        let b = ComplexField::new(v.iter().map(|p| Complex::new(p[2], T::zero())).collect());
        let (da, db) = if order == 1 { (grid.d1(&a)?, grid.d1(&b)?) } else { (grid.d2(&a)?, grid.d2(&b)?) };
        for i in 0..m {
            out[i] = [da[i].re, da[i].im, db[i].re];
        }
    } else {
        for c in 0..3 {
            let col: Vec<T> = v.iter().map(|p| p[c]).collect();
            let d = if order == 1 { fd_d1(&col, h) } else { fd_d2(&col, h) };
            for i in 0..m {
                out[i][c] = d[i];
            }
        }
        let width = 2 * FD_HALF_WIDTH + 2;
        if m >= width {
            let offsets: Vec<f64> = (0..width).map(|j| j as f64).collect();
            for i in 0..FD_HALF_WIDTH {
                let w = &fd_weights(i as f64, &offsets, order)[order];
                let scale_h = T::one() / h.powi(order as i32);
                for (node, sign) in [(i, T::one()), (m - 1 - i, if order == 1 { -T::one() } else { T::one() })] {
                    let mut acc = [T::zero(); 3];
                    for (j, &wj) in w.iter().enumerate() {
                        let k = if node == i { j } else { m - 1 - j };
                        acc = add(acc, scale(lit::<T>(wj), v[k]));
                    }
                    out[node] = scale(sign * scale_h, acc);
                }
            }
        }
    }
    Ok(out)
}

impl<T: Real> Curve3D<T> {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn s(&self, m: usize) -> T {
        self.s0 + self.h * count(m)
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.len()).map(|m| self.s(m)).collect()
    }

    /// Index of the node closest to `s`.
    pub fn nearest(&self, s: T) -> usize {
        let m = ((s - self.s0) / self.h).round().to_isize().unwrap_or(0);
        m.clamp(0, self.len() as isize - 1) as usize
    }

    /// Open sub-curve over the nodes with `lo ≤ s ≤ hi`.
    pub fn section(&self, lo: T, hi: T) -> Result<Self> {
        let a = (0..self.len()).find(|&m| self.s(m) >= lo).unwrap_or(self.len());
        let b = (0..self.len()).rev().find(|&m| self.s(m) <= hi).unwrap_or(0);
        if b < a + 3 {
            return usage("section holds fewer than four nodes");
        }
        let r = a..b + 1;
        Ok(Curve3D {
            s0: self.s(a),
            h: self.h,
            periodic: false,
            x: self.x[r.clone()].to_vec(),
            tangent: self.tangent[r.clone()].to_vec(),
            normal: self.normal[r.clone()].to_vec(),
            binormal: self.binormal[r.clone()].to_vec(),
            curvature: self.curvature[r.clone()].to_vec(),
            torsion: self.torsion[r].to_vec(),
        })
    }

    /// Builds the frame, curvature and torsion from sampled positions and tangents.
    pub fn from_tangents(s0: T, h: T, periodic: bool, x: Vec<Vec3<T>>, tangent: Vec<Vec3<T>>) -> Result<Self> {
        let m = x.len();
        if tangent.len() != m {
            return Err(Error::LengthMismatch { expected: m, found: tangent.len() });
        }
        if m < 4 || !(h > T::zero()) {
            return usage("a curve needs at least four nodes and positive spacing");
        }
        if periodic && !m.is_power_of_two() {
            return usage("closed curves need a power-of-two node count");
        }
        let tangent: Vec<Vec3<T>> = tangent.into_iter().map(normalize).collect();
        let d1 = derivatives(&tangent, h, periodic, 1)?;
        let d2 = derivatives(&tangent, h, periodic, 2)?;
        let mut normal = Vec::with_capacity(m);
        let mut curvature = Vec::with_capacity(m);
        let mut torsion = Vec::with_capacity(m);
        let mut prev = orthogonal(tangent[0]);
        for i in 0..m {
            let t = tangent[i];
            let k = sub(d1[i], scale(dot(d1[i], t), t));
            let c = norm(k);
            let n = if c > lit(FLAT) {
                scale(T::one() / c, k)
            } else {
                normalize(sub(prev, scale(dot(prev, t), t)))
            };
            let tau = if c > lit(FLAT) { dot(cross(t, d1[i]), d2[i]) / (c * c) } else { T::zero() };
            normal.push(n);
            curvature.push(c);
            torsion.push(tau);
            prev = n;
        }
        let binormal = tangent.iter().zip(&normal).map(|(t, n)| cross(*t, *n)).collect();
        Ok(Curve3D { s0, h, periodic, x, tangent, normal, binormal, curvature, torsion })
    }

    /// Closed curve `f(u)`, `u ∈ [0, 2π)`, resampled at uniform arclength.
    pub fn closed_from_parametric(f: impl Fn(T) -> Vec3<T>, df: impl Fn(T) -> Vec3<T>, points: usize) -> Result<Self> {
        if !points.is_power_of_two() || points < 8 {
            return usage("closed curves need a power-of-two node count of at least 8");
        }
        let fine = 64 * points;
        let du = T::TAU() / count(fine);
        let speed = |u: T| norm(df(u));
        let rule = crate::numerics::gauss_legendre(8);
        let mut arc = vec![T::zero(); fine + 1];
        for i in 0..fine {
            let a = du * count(i);
            let mut acc = T::zero();
            for &(x, w) in &rule {
                acc += lit::<T>(w) * speed(a + du * (lit::<T>(x) + T::one()) / lit(2.0));
            }
            arc[i + 1] = arc[i] + acc * du / lit(2.0);
        }
        let total = arc[fine];
        let h = total / count(points);
        let mut x = Vec::with_capacity(points);
        let mut tangent = Vec::with_capacity(points);
        let mut j = 0usize;
        for m in 0..points {
            let target = h * count(m);
            while j + 1 < fine && arc[j + 1] < target {
                j += 1;
            }
            let mut u = du * (count::<T>(j) + (target - arc[j]) / (arc[j + 1] - arc[j]));
            for _ in 0..20 {
                let base = du * count(j);
                let seg = crate::numerics::integrate_gl(speed, base, u, 1, 12)?;
                let step = (arc[j] + seg - target) / speed(u);
                u -= step;
                if step.abs() < lit(1e-15) {
                    break;
                }
            }
            x.push(f(u));
            tangent.push(normalize(df(u)));
        }
        Self::from_tangents(-total / lit(2.0), h, true, x, tangent)
    }

    /// Offset `χ(s + Mh) - χ(s)` of a periodic curve, `h Σ T_m`.
    pub fn period_offset(&self) -> Vec3<T> {
        let mut acc = [T::zero(); 3];
        for t in &self.tangent {
            acc = add(acc, *t);
        }
        scale(self.h, acc)
    }

    /// `∫|χ_s| ds`, with `χ_s` differentiated like the tangent.
    pub fn length(&self) -> Result<T> {
        let m = self.len();
        let speed: Vec<T> = if self.periodic {
            let offset = self.period_offset();
            let period = self.h * count(m);
            let y: Vec<Vec3<T>> = self.x.iter().enumerate().map(|(i, p)| sub(*p, scale(count::<T>(i) / count(m), offset))).collect();
            derivatives(&y, self.h, true, 1)?.into_iter().map(|d| norm(add(d, scale(T::one() / period, offset)))).collect()
        } else {
            derivatives(&self.x, self.h, false, 1)?.into_iter().map(norm).collect()
        };
        Ok(self.weighted_sum(&speed))
    }

    fn weighted_sum(&self, v: &[T]) -> T {
        let sum: T = v.iter().copied().sum();
        if self.periodic {
            sum * self.h
        } else {
            (sum - (v[0] + v[v.len() - 1]) / lit(2.0)) * self.h
        }
    }

    /// `∫c² ds` by the trapezoid rule.
    pub fn kinetic_energy(&self) -> T {
        let sq: Vec<T> = self.curvature.iter().map(|c| *c * *c).collect();
        self.weighted_sum(&sq)
    }

    /// `(max ||T| - 1|, max frame orthonormality defect, max ||χ_{m+1} - χ_m| - h|)`.
    pub fn defects(&self) -> (T, T, T) {
        let mut unit = T::zero();
        let mut ortho = T::zero();
        for i in 0..self.len() {
            let (t, n, b) = (self.tangent[i], self.normal[i], self.binormal[i]);
            unit = unit.max((norm(t) - T::one()).abs());
            for v in [dot(t, n), dot(t, b), dot(n, b), norm(n) - T::one(), norm(b) - T::one()] {
                ortho = ortho.max(v.abs());
            }
        }
        let chord = self.x.windows(2).map(|w| (norm(sub(w[1], w[0])) - self.h).abs()).fold(T::zero(), T::max);
        (unit, ortho, chord)
    }
}
