use num_complex::Complex;

use crate::error::{usage, Result};
use crate::events::{Event, EventKind};
use crate::numerics::rk4_step;
use crate::pointvortex::dynamics::{invariants_of, velocities, PvInvariants};
use crate::pointvortex::state::min_separation;
use crate::pointvortex::PointVortexState;
use crate::scalar::{lit, Real};

/// Options for [`pv_integrate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvOptions<T> {
    pub dt: T,
    pub t_end: T,
    /// Absolute collision threshold; defaults to `1e-4` times the initial minimum separation.
    pub collision_eps: Option<T>,
    /// Keep every `sample_every`-th step in the trajectory.
    pub sample_every: usize,
}

impl<T: Real> PvOptions<T> {
    pub fn new(dt: T, t_end: T) -> Self {
        PvOptions { dt, t_end, collision_eps: None, sample_every: 1 }
    }
}

/// Largest deviation of each first integral from its initial value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InvariantDrift<T> {
    pub hamiltonian: T,
    pub center: T,
    pub angular_momentum: T,
    pub t_moment: T,
}

impl<T: Real> InvariantDrift<T> {
    fn update(&mut self, a: &PvInvariants<T>, b: &PvInvariants<T>) {
        self.hamiltonian = self.hamiltonian.max((a.hamiltonian - b.hamiltonian).abs());
        self.center = self.center.max((a.center - b.center).norm());
        self.angular_momentum = self.angular_momentum.max((a.angular_momentum - b.angular_momentum).abs());
        self.t_moment = self.t_moment.max((a.t_moment - b.t_moment).abs());
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PvSample<T> {
    pub time: T,
    pub positions: Vec<Complex<T>>,
    pub invariants: PvInvariants<T>,
    pub min_separation: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PvTrajectory<T> {
    pub circulations: Vec<T>,
    pub initial_invariants: PvInvariants<T>,
    pub samples: Vec<PvSample<T>>,
    pub events: Vec<Event<T>>,
    pub drift: InvariantDrift<T>,
    pub final_state: PointVortexState<T>,
    /// Number of accepted RK4 sub-steps.
    pub substeps: usize,
}

/// RK4 integration with the default sampling.
pub fn pv_integrate<T: Real>(
    s0: &PointVortexState<T>,
    t_end: T,
    dt: T,
    collision_eps: Option<T>,
) -> Result<PvTrajectory<T>> {
    pv_integrate_with(s0, &PvOptions { dt, t_end, collision_eps, sample_every: 1 })
}

/// Fixed-step RK4 integration of the point-vortex system.
///
/// Each nominal step is split into a deterministic number of sub-steps when
/// the largest displacement would exceed 5% of the minimum separation, so
/// that approaching collisions are resolved. The drift record covers the
/// nominal steps completed before any event.
pub fn pv_integrate_with<T: Real>(s0: &PointVortexState<T>, opts: &PvOptions<T>) -> Result<PvTrajectory<T>> {
    if !(opts.dt > T::zero()) {
        return usage("dt must be positive");
    }
    if opts.t_end < s0.time {
        return usage("t_end precedes the initial time");
    }
    let g = s0.circulations.clone();
    let (d0, _) = min_separation(&s0.positions);
    let eps = opts.collision_eps.unwrap_or(lit::<T>(1e-4) * if d0.is_finite() { d0 } else { T::one() });
    let inv0 = invariants_of(&s0.positions, &g)?;
    let sample_every = opts.sample_every.max(1);

    let mut x = s0.positions.clone();
    let mut t = s0.time;
    let mut drift = InvariantDrift::default();
    let mut samples = vec![PvSample { time: t, positions: x.clone(), invariants: inv0, min_separation: d0 }];
    let mut events = Vec::new();
    let mut substeps = 0usize;
    let mut step = 0usize;
    let tiny = opts.dt * lit(2f64.powi(-40));

    'outer: while t < opts.t_end - opts.dt * lit(1e-9) {
        let target = (t + opts.dt).min(opts.t_end);
        while t < target {
            let (d, pair) = min_separation(&x);
            if d < eps {
                events.push(Event { kind: EventKind::Collision, time: t, pair, sigma: None, value: d });
                break 'outer;
            }
            let v = match velocities(&x, &g) {
                Ok(v) => v,
                Err(_) => {
                    events.push(Event { kind: EventKind::Collision, time: t, pair, sigma: None, value: d });
                    break 'outer;
                }
            };
            let vmax = v.iter().fold(T::zero(), |m, z| m.max(z.norm()));
            let mut h = target - t;
            while h * vmax > lit::<T>(0.05) * d && h > tiny {
                h = h / lit(2.0);
            }
            let next = rk4_step(&x, t, h, |_, y: &Vec<Complex<T>>| velocities(y, &g));
            match next {
                Ok(y) => {
                    x = y;
                    t = if h == target - t { target } else { t + h };
                    substeps += 1;
                }
                Err(_) => {
                    events.push(Event { kind: EventKind::Collision, time: t, pair, sigma: None, value: d });
                    break 'outer;
                }
            }
        }
        step += 1;
        let (d, pair) = min_separation(&x);
        if d < eps {
            events.push(Event { kind: EventKind::Collision, time: t, pair, sigma: None, value: d });
            break;
        }
        let inv = invariants_of(&x, &g)?;
        drift.update(&inv, &inv0);
        if step % sample_every == 0 || t >= opts.t_end - opts.dt * lit(1e-9) {
            samples.push(PvSample { time: t, positions: x.clone(), invariants: inv, min_separation: d });
        }
    }
    let mut final_state = PointVortexState::with_core(x, g.clone(), s0.core.clone())?;
    final_state.time = t;
    Ok(PvTrajectory { circulations: g, initial_invariants: inv0, samples, events, drift, final_state, substeps })
}
