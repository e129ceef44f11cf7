use crate::binormal::curve::derivatives;
use crate::binormal::vec3::{cross, normalize, Vec3};
use crate::binormal::Curve3D;
use crate::error::{usage, Error, Result};
use crate::numerics::{rk4_step, FD_HALF_WIDTH};
use crate::scalar::{count, lit, Real};

type State<T> = (Vec<Vec3<T>>, Vec<Vec3<T>>);

fn rhs<T: Real>(y: &State<T>, h: T, periodic: bool) -> Result<State<T>> {
    let t = &y.0;
    let ts = derivatives(t, h, periodic, 1)?;
    let tss = derivatives(t, h, periodic, 2)?;
    let mut dt: Vec<Vec3<T>> = t.iter().zip(&tss).map(|(a, b)| cross(*a, *b)).collect();
    let mut dx: Vec<Vec3<T>> = t.iter().zip(&ts).map(|(a, b)| cross(*a, *b)).collect();
    if !periodic {
        let n = t.len();
        for m in (0..FD_HALF_WIDTH).chain(n - FD_HALF_WIDTH..n) {
            dt[m] = [T::zero(); 3];
            dx[m] = [T::zero(); 3];
        }
    }
    Ok((dt, dx))
}

/// One RK4 step of `T_t = T × T_ss`, `χ_t = T × T_s`, with `|T| = 1` restored.
///
/// Periodic curves use spectral derivatives; open curves use finite
/// differences with the end nodes held fixed.
pub fn bf_step<T: Real>(curve: &Curve3D<T>, dt: T) -> Result<Curve3D<T>> {
    if !curve.periodic && curve.len() <= 2 * FD_HALF_WIDTH + 1 {
        return usage("open curve is too short for the interior stencil");
    }
    let y0 = (curve.tangent.clone(), curve.x.clone());
    let y1 = rk4_step(&y0, T::zero(), dt, |_, y: &State<T>| rhs(y, curve.h, curve.periodic))
        .map_err(|_| Error::StepFailure("non-finite tangent".into()))?;
    let tangent: Vec<Vec3<T>> = y1.0.into_iter().map(normalize).collect();
    let next = Curve3D::from_tangents(curve.s0, curve.h, curve.periodic, y1.1, tangent)?;
    let resolved = lit::<T>(0.5) * T::PI() / curve.h;
    if next.curvature.iter().any(|c| !(c.is_finite() && *c < resolved)) {
        return Err(Error::StepFailure("curvature exceeds the grid resolution".into()));
    }
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BfSample<T> {
    pub time: T,
    pub length: T,
    pub energy: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BfRun<T> {
    pub samples: Vec<BfSample<T>>,
    pub final_curve: Curve3D<T>,
    pub steps: usize,
}

pub fn bf_evolve<T: Real>(curve: &Curve3D<T>, dt: T, t_end: T, sample_every: usize) -> Result<BfRun<T>> {
    if !(dt > T::zero()) || t_end < T::zero() {
        return usage("dt must be positive and t_end non-negative");
    }
    let steps = (t_end / dt).round().to_usize().unwrap_or(0);
    let every = sample_every.max(1);
    let sample = |c: &Curve3D<T>, k: usize| -> Result<BfSample<T>> {
        Ok(BfSample { time: dt * count(k), length: c.length()?, energy: c.kinetic_energy() })
    };
    let mut c = curve.clone();
    let mut samples = vec![sample(&c, 0)?];
    for k in 1..=steps {
        c = bf_step(&c, dt)?;
        if k % every == 0 || k == steps {
            samples.push(sample(&c, k)?);
        }
    }
    Ok(BfRun { samples, final_curve: c, steps })
}
