use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::events::{Event, EventKind};
use crate::filaments::energy::{renormalized_quantities, separation_detail, separation_profile, RenormalizedQuantities, SeparationDetail};
use crate::filaments::rhs::interaction;
use crate::filaments::FilamentField;
use crate::numerics::{rk4_step, strang_step, ComplexField};
use crate::pointvortex::velocities;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KmdOptions<T> {
    pub dt: T,
    pub t_end: T,
    pub sample_every: usize,
    /// Collision when `min |Ψ_j - Ψ_k| / |X_j - X_k|` drops below this.
    pub collision_ratio: T,
    /// Optional absolute collision distance.
    pub collision_eps: Option<T>,
    /// Compute renormalised quantities at every sample.
    pub quantities: bool,
    /// Keep a copy of the fields at every sample.
    pub keep_fields: bool,
    /// Keep stepping past a detected collision to locate the closest approach.
    pub refine_events: bool,
}

impl<T: Real> KmdOptions<T> {
    pub fn new(dt: T, t_end: T) -> Self {
        KmdOptions {
            dt,
            t_end,
            sample_every: 1,
            collision_ratio: lit(0.05),
            collision_eps: None,
            quantities: true,
            keep_fields: false,
            refine_events: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilamentSample<T: Real> {
    pub time: T,
    pub separation: SeparationDetail<T>,
    pub quantities: Option<RenormalizedQuantities<T>>,
    pub fields: Option<Vec<ComplexField<T>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KmdRun<T: Real> {
    pub samples: Vec<FilamentSample<T>>,
    pub events: Vec<Event<T>>,
    pub final_state: FilamentField<T>,
    pub steps: usize,
}

/// One Strang step: exact free propagation with `α_jΓ_j`, RK4 on the
/// interaction sub-flow (the base positions are evaluated in closed form or
/// co-integrated).
pub fn kmd_step<T: Real>(f: &mut FilamentField<T>, dt: T) -> Result<()> {
    let kappa = f.dispersion();
    let g = f.circulations.clone();
    let rep = f.representation;
    let base = f.base.clone();
    let grid = f.grid.clone();
    let x0 = f.base_positions.clone();
    let integrated = base.is_integrated();
    let zero = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let mut x_end = x0.clone();
    strang_step(&mut f.fields, &kappa, &grid, f.time, dt, |t0, h, u| {
        let y0 = (u.to_vec(), x0.clone());
        let y1 = rk4_step(&y0, t0, h, |ts, y: &(Vec<ComplexField<T>>, Vec<Complex<T>>)| {
            let x = match base.positions_at(ts) {
                Some(r) => r?,
                None => y.1.clone(),
            };
            let p = interaction(&y.0, &x, &g, rep)?;
            let du: Vec<ComplexField<T>> = p.into_iter().map(|p| p.map(|z| i * z)).collect();
            let dx = if integrated { velocities(&y.1, &g)? } else { vec![zero; y.1.len()] };
            Ok((du, dx))
        })?;
        for (a, b) in u.iter_mut().zip(y1.0) {
            *a = b;
        }
        x_end = y1.1;
        Ok(())
    })?;
    f.time += dt;
    f.base_positions = match base.positions_at(f.time) {
        Some(x) => x?,
        None => x_end,
    };
    Ok(())
}

pub fn kmd_evolve<T: Real>(f0: &FilamentField<T>, opts: &KmdOptions<T>) -> Result<KmdRun<T>> {
    kmd_evolve_observed(f0, opts, |_| Ok(()))
}

/// Split-step evolution; `observer` sees the state at every sample.
pub fn kmd_evolve_observed<T, O>(f0: &FilamentField<T>, opts: &KmdOptions<T>, mut observer: O) -> Result<KmdRun<T>>
where
    T: Real,
    O: FnMut(&FilamentField<T>) -> Result<()>,
{
    if !(opts.dt > T::zero()) {
        return usage("dt must be positive");
    }
    let every = opts.sample_every.max(1);
    let mut f = f0.clone();
    let mut samples = Vec::new();
    let mut events = Vec::new();
    let take = |f: &FilamentField<T>, sep: SeparationDetail<T>| -> Result<FilamentSample<T>> {
        let quantities = if opts.quantities { renormalized_quantities(f).ok() } else { None };
        Ok(FilamentSample { time: f.time, separation: sep, quantities, fields: opts.keep_fields.then(|| f.fields.clone()) })
    };
    let sep0 = separation_detail(&f)?;
    observer(&f)?;
    samples.push(take(&f, sep0)?);
    let triggered = |s: &SeparationDetail<T>| {
        s.min_ratio < opts.collision_ratio || opts.collision_eps.is_some_and(|e| s.min_distance < e)
    };
    if triggered(&sep0) {
        events.push(collision_event(f.time, &sep0));
        return Ok(KmdRun { samples, events, final_state: f, steps: 0 });
    }
    let total = ((opts.t_end - f.time) / opts.dt).round().to_usize().unwrap_or(0);
    let mut history: Vec<(T, SeparationDetail<T>)> = vec![(f.time, sep0)];
    let mut steps = 0usize;
    while steps < total {
        let prev = f.clone();
        match kmd_step(&mut f, opts.dt) {
            Ok(()) => {}
            Err(Error::Domain(_)) if f.base.collapse_time().is_some() => {
                let tau = f.base.collapse_time().unwrap_or(prev.time);
                let last = history.last().map(|h| h.1).unwrap_or(sep0);
                let mut ev = collision_event(tau, &last);
                ev.time = tau;
                events.push(ev);
                f = prev;
                break;
            }
            Err(Error::SingularPotential { .. }) | Err(Error::NonFinite(_)) => {
                let ev = refined_event(&history, by_ratio);
                events.push(ev);
                f = prev;
                break;
            }
            Err(e) => return Err(e),
        }
        steps += 1;
        let sep = separation_detail(&f)?;
        history.push((f.time, sep));
        if history.len() > 3 {
            history.remove(0);
        }
        if triggered(&sep) {
            let key: Monitor<T> = if sep.min_ratio < opts.collision_ratio { by_ratio } else { by_distance };
            let ev = if !opts.refine_events {
                collision_event(f.time, &sep)
            } else if let Some(time) = extrapolated_zero(&history, key) {
                let distance = sep.min_ratio >= opts.collision_ratio;
                let sigma = extrapolated_sigma(&prev, &f, time, distance).unwrap_or(sep.sigma);
                Event { time, sigma: Some(sigma), ..collision_event(f.time, &sep) }
            } else {
                refine(&mut f, opts.dt, &mut history, key)?
            };
            events.push(ev);
            observer(&f)?;
            samples.push(take(&f, separation_detail(&f)?)?);
            return Ok(KmdRun { samples, events, final_state: f, steps });
        }
        if steps % every == 0 || steps == total {
            observer(&f)?;
            samples.push(take(&f, sep)?);
        }
    }
    Ok(KmdRun { samples, events, final_state: f, steps })
}

fn collision_event<T: Real>(time: T, sep: &SeparationDetail<T>) -> Event<T> {
    Event {
        kind: EventKind::Collision,
        time,
        pair: Some(sep.pair),
        sigma: Some(sep.sigma),
        value: sep.min_ratio,
    }
}

/// Steps on until the closest approach has passed, then fits a parabola
/// through the squared minimum ratio at the three surrounding steps.
fn refine<T: Real>(
    f: &mut FilamentField<T>,
    dt: T,
    history: &mut Vec<(T, SeparationDetail<T>)>,
    key: Monitor<T>,
) -> Result<Event<T>> {
    let scale = key(&history[0].1);
    for _ in 0..1000 {
        let n = history.len();
        if n >= 2 && key(&history[n - 1].1) >= key(&history[n - 2].1) {
            break;
        }
        if !(key(&history[n - 1].1) >= lit::<T>(1e-8) * scale) {
            break;
        }
        let prev = f.clone();
        if kmd_step(f, dt).is_err() {
            *f = prev;
            break;
        }
        let sep = separation_detail(f)?;
        if !key(&sep).is_finite() {
            *f = prev;
            break;
        }
        history.push((f.time, sep));
        if history.len() > 3 {
            history.remove(0);
        }
    }
    Ok(refined_event(history, key))
}

/// Zero of the monitor (or of its square) extrapolated from the last three
/// steps, accepted only when the approach is nearly linear over the gap.
fn extrapolated_zero<T: Real>(history: &[(T, SeparationDetail<T>)], key: Monitor<T>) -> Option<T> {
    if history.len() < 3 {
        return None;
    }
    let n = history.len();
    let h = history[n - 1].0 - history[n - 2].0;
    let m: Vec<T> = history[n - 3..].iter().map(|e| key(&e.1)).collect();
    let two = lit::<T>(2.0);
    for power in [1, 2] {
        let v: Vec<T> = m.iter().map(|&x| if power == 1 { x } else { x * x }).collect();
        let slope = (lit::<T>(3.0) * v[2] - lit::<T>(4.0) * v[1] + v[0]) / (two * h);
        let curv = (v[2] - two * v[1] + v[0]) / (h * h);
        if !(slope < T::zero()) {
            return None;
        }
        let gap = -v[2] / slope;
        if curv.abs() * gap * gap / two <= lit::<T>(0.1) * v[2] {
            return Some(history[n - 1].0 + gap);
        }
    }
    None
}

/// Height of the closest approach at `time`: the minimum separation at every
/// node is extrapolated linearly from the last two states, and the minimiser
/// is refined by a parabola through its neighbours.
fn extrapolated_sigma<T: Real>(prev: &FilamentField<T>, f: &FilamentField<T>, time: T, distance: bool) -> Option<T> {
    let gap = f.time - prev.time;
    if !(gap > T::zero()) {
        return None;
    }
    let w = (time - f.time) / gap;
    let r0 = separation_profile(prev, distance);
    let r1 = separation_profile(f, distance);
    let r: Vec<T> = r0.iter().zip(&r1).map(|(a, b)| *b + (*b - *a) * w).collect();
    let m = r.len();
    let best = (0..m).min_by(|&a, &b| r[a].partial_cmp(&r[b]).unwrap_or(std::cmp::Ordering::Equal))?;
    let (a, b, c) = (r[(best + m - 1) % m], r[best], r[(best + 1) % m]);
    let curv = a - lit::<T>(2.0) * b + c;
    let shift = if curv > T::zero() { (a - c) / (lit::<T>(2.0) * curv) } else { T::zero() };
    let half = lit::<T>(0.5);
    Some(f.grid.node(best) + f.grid.spacing() * shift.max(-half).min(half))
}

type Monitor<T> = fn(&SeparationDetail<T>) -> T;

fn by_ratio<T: Real>(s: &SeparationDetail<T>) -> T {
    s.min_ratio
}

fn by_distance<T: Real>(s: &SeparationDetail<T>) -> T {
    s.min_distance
}

fn refined_event<T: Real>(history: &[(T, SeparationDetail<T>)], key: Monitor<T>) -> Event<T> {
    let n = history.len();
    let best = (0..n)
        .min_by(|&a, &b| key(&history[a].1).partial_cmp(&key(&history[b].1)).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap_or(0);
    let sep = history[best].1;
    let mut ev = collision_event(history[best].0, &sep);
    if n == 3 {
        let v: Vec<T> = history.iter().map(|h| key(&h.1) * key(&h.1)).collect();
        if let Some(t) = parabola_vertex([history[0].0, history[1].0, history[2].0], [v[0], v[1], v[2]]) {
            ev.time = t;
        }
    }
    ev
}

/// Vertex of the parabola through three equally spaced samples, if it is a minimum
/// within one spacing of the middle node.
pub(crate) fn parabola_vertex<T: Real>(t: [T; 3], v: [T; 3]) -> Option<T> {
    let h = t[1] - t[0];
    let curv = v[0] - lit::<T>(2.0) * v[1] + v[2];
    if !(curv > T::zero()) || h <= T::zero() {
        return None;
    }
    let shift = h * (v[0] - v[2]) / (lit::<T>(2.0) * curv);
    if shift.abs() > lit::<T>(1.5) * h {
        return None;
    }
    Some(t[1] + shift)
}
