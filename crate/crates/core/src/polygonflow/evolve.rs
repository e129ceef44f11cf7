use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::events::{Event, EventKind};
use crate::filaments::parabola_vertex;
use crate::numerics::{strang_step};
use crate::polygonflow::{bm_energy, PolygonProfile};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmOptions<T> {
    pub dt: T,
    pub t_end: T,
    pub sample_every: usize,
    /// Vanish event when `min |Φ|` drops below this.
    pub vanish_eps: T,
    /// Step past the threshold and fit the closest approach.
    pub refine_events: bool,
}

impl<T: Real> BmOptions<T> {
    pub fn new(dt: T, t_end: T) -> Self {
        BmOptions { dt, t_end, sample_every: 1, vanish_eps: lit(1e-2), refine_events: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmSample<T> {
    pub time: T,
    pub energy: Option<T>,
    pub energy_gp: Option<T>,
    pub min_modulus: T,
    pub argmin: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BmRun<T: Real> {
    pub samples: Vec<BmSample<T>>,
    pub events: Vec<Event<T>>,
    pub final_profile: PolygonProfile<T>,
    pub final_time: T,
    pub steps: usize,
}

/// One Strang step; the potential sub-flow is the exact modulus-preserving
/// rotation `Φ e^{iω dt (1 - |Φ|²)/|Φ|²}`.
pub fn bm_step<T: Real>(p: &mut PolygonProfile<T>, dt: T) -> Result<()> {
    let omega = p.omega;
    let grid = p.grid.clone();
    let mut fields = [p.phi.clone()];
    strang_step(&mut fields, &[p.kappa], &grid, T::zero(), dt, |_, h, u| {
        for (m, z) in u[0].iter_mut().enumerate() {
            let r2 = z.norm_sqr();
            if r2 == T::zero() {
                return Err(Error::Vanishing { index: m });
            }
            *z = *z * Complex::from_polar(T::one(), omega * h * (T::one() - r2) / r2);
        }
        Ok(())
    })?;
    let [phi] = fields;
    p.phi = phi;
    Ok(())
}

fn sample<T: Real>(p: &PolygonProfile<T>, t: T) -> BmSample<T> {
    let (argmin, min_modulus) = p.min_modulus();
    let (energy, energy_gp) = match bm_energy(p) {
        Ok((e, g)) => (Some(e), Some(g)),
        Err(_) => (None, None),
    };
    BmSample { time: t, energy, energy_gp, min_modulus, argmin }
}

fn vanish_event<T: Real>(history: &[(T, usize, T)], p: &PolygonProfile<T>) -> Event<T> {
    let best = (0..history.len())
        .min_by(|&a, &b| history[a].2.partial_cmp(&history[b].2).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap_or(0);
    let (t, idx, v) = history[best];
    let mut time = t;
    if history.len() == 3 {
        let sq = |x: T| x * x;
        if let Some(tv) = parabola_vertex(
            [history[0].0, history[1].0, history[2].0],
            [sq(history[0].2), sq(history[1].2), sq(history[2].2)],
        ) {
            time = tv;
        }
    }
    Event { kind: EventKind::Vanish, time, pair: None, sigma: Some(p.grid.node(idx)), value: v }
}

/// Split-step evolution of the polygon profile with vanish detection.
pub fn bm_evolve<T: Real>(p0: &PolygonProfile<T>, opts: &BmOptions<T>) -> Result<BmRun<T>> {
    if !(opts.dt > T::zero()) {
        return usage("dt must be positive");
    }
    let every = opts.sample_every.max(1);
    let mut p = p0.clone();
    let mut t = T::zero();
    let mut samples = vec![sample(&p, t)];
    let mut events = Vec::new();
    let total = (opts.t_end / opts.dt).round().to_usize().unwrap_or(0);
    let (i0, m0) = p.min_modulus();
    let mut history = vec![(t, i0, m0)];
    if m0 < opts.vanish_eps {
        events.push(vanish_event(&history, &p));
        return Ok(BmRun { samples, events, final_profile: p, final_time: t, steps: 0 });
    }
    let mut steps = 0;
    let push = |h: &mut Vec<(T, usize, T)>, entry| {
        h.push(entry);
        if h.len() > 3 {
            h.remove(0);
        }
    };
    let mut triggered = false;
    while steps < total || (triggered && steps < total + 100_000) {
        let prev = p.clone();
        if bm_step(&mut p, opts.dt).is_err() {
            p = prev;
            events.push(vanish_event(&history, &p));
            break;
        }
        steps += 1;
        t = opts.dt * lit::<T>(steps as f64);
        let (idx, m) = p.min_modulus();
        if !m.is_finite() {
            p = prev;
            t = t - opts.dt;
            events.push(vanish_event(&history, &p));
            break;
        }
        push(&mut history, (t, idx, m));
        if triggered {
            let n = history.len();
            if history[n - 1].2 >= history[n - 2].2 || m < lit::<T>(1e-10) {
                events.push(vanish_event(&history, &p));
                samples.push(sample(&p, t));
                break;
            }
            continue;
        }
        if m < opts.vanish_eps {
            if !opts.refine_events {
                events.push(vanish_event(&history[history.len() - 1..], &p));
                samples.push(sample(&p, t));
                break;
            }
            triggered = true;
            continue;
        }
        if steps % every == 0 || steps == total {
            samples.push(sample(&p, t));
        }
    }
    Ok(BmRun { samples, events, final_profile: p, final_time: t, steps })
}
