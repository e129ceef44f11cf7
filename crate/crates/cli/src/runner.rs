//! Executes a scenario and collects its summary and time series.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use statrs::function::gamma::gamma;
use vortexlab_core::binormal::{
    bf_step, corner_angle, corner_sin_half, hasimoto, rigid_fit, selfsimilar_filament, selfsimilar_profile, Curve3D,
    HasimotoBranch,
};
use vortexlab_core::collapse::{
    classify_regime, cw_amplitude, selfsimilar_ode_solve, selfsimilar_r2, shifted_collapse, validity_end, BaseCollapse,
    SelfSimilarParams,
};
use vortexlab_core::filaments::{
    kmd_evolve_observed, kmd_rhs_fd, parallelogram_perturbation, BaseMotion, FilamentField, KmdOptions,
};
use vortexlab_core::numerics::{ComplexField, Grid1D, FD_HALF_WIDTH};
use vortexlab_core::pointvortex::{
    polygon_equilibrium, pv_integrate_with, pv_linear_spectrum, PointVortexState, PvOptions, ThreeVortexCollapse,
};
use vortexlab_core::polygonflow::{bm_evolve, bm_rhs_fd, helix_transform, traveling_wave, BmOptions, PolygonProfile};
use vortexlab_core::{Event, Grid};

use crate::error::{io, CliResult};
use crate::fixtures::{c64, centroid, circle, collapse_tail, free_gaussian, gaussian, gaussian_collapse_datum, helix, knot};
use crate::scenario::{Family, Scenario};
use crate::table::Table;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventRecord {
    pub kind: String,
    pub time: f64,
    pub pair: Option<[usize; 2]>,
    pub sigma: Option<f64>,
    pub value: f64,
}

impl From<&Event<f64>> for EventRecord {
    fn from(e: &Event<f64>) -> Self {
        EventRecord { kind: e.kind.name().into(), time: e.time, pair: e.pair.map(|(a, b)| [a, b]), sigma: e.sigma, value: e.value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Completed,
    Event,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub scenario: Value,
    pub status: Status,
    pub events: Vec<EventRecord>,
    /// Largest deviation of each declared conserved quantity.
    pub invariants: BTreeMap<String, f64>,
    /// Largest deviation from each available closed form.
    pub closed_form: BTreeMap<String, f64>,
    pub metrics: BTreeMap<String, Value>,
    pub steps: usize,
    pub wall_clock_seconds: f64,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Completed => 0,
            Status::Event => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub summary: RunSummary,
    pub table: Table,
}

#[derive(Default)]
struct Collector {
    events: Vec<EventRecord>,
    invariants: BTreeMap<String, f64>,
    closed_form: BTreeMap<String, f64>,
    metrics: BTreeMap<String, Value>,
    steps: usize,
}

impl Collector {
    fn invariant(&mut self, name: &str, v: f64) {
        self.invariants.insert(name.into(), v);
    }
    fn closed(&mut self, name: &str, v: f64) {
        self.closed_form.insert(name.into(), v);
    }
    fn metric(&mut self, name: &str, v: impl Serialize) {
        self.metrics.insert(name.into(), serde_json::to_value(v).unwrap_or(Value::Null));
    }
}

fn steps_of(dt: f64, t_end: f64) -> usize {
    (t_end / dt).round() as usize
}

pub fn run(s: &Scenario) -> CliResult<RunOutput> {
    let start = Instant::now();
    let mut c = Collector::default();
    let table = match &s.family {
        Family::VortexPolygon(_) | Family::ThreeVortexCollapse | Family::VortexCustom(_) => point_vortices(s, &mut c)?,
        Family::EmptyPerturbation(_)
        | Family::ShiftedGaussian(_)
        | Family::GaussianPolygonCollapse(_)
        | Family::ShiftedTriangle(_)
        | Family::Parallelogram(_) => filaments(s, &mut c)?,
        Family::GaussianCollapse(_) | Family::GroundState(_) | Family::ProfileBump(_) => polygon_profile(s, &mut c)?,
        Family::TravelingWave(_) => wave(s, &mut c)?,
        Family::SelfSimilarTriangle(_) => triangle(s, &mut c)?,
        Family::CwAmplitude(_) => amplitude(s, &mut c)?,
        Family::CornerAngle(_) => corner(s, &mut c)?,
        Family::SelfSimilarCurve(_) | Family::CircleCurve(_) | Family::HelixCurve(_) | Family::KnotCurve(_) => curve(s, &mut c)?,
    };
    let status = if c.events.is_empty() { Status::Completed } else { Status::Event };
    let summary = RunSummary {
        scenario: s.echo(),
        status,
        events: c.events,
        invariants: c.invariants,
        closed_form: c.closed_form,
        metrics: c.metrics,
        steps: c.steps,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    Ok(RunOutput { summary, table })
}

/// Runs the scenario file and writes the time series and summary into `out`.
pub fn run_file(scenario: &Path, out: &Path) -> CliResult<RunSummary> {
    let text = std::fs::read_to_string(scenario).map_err(io(scenario))?;
    let s = Scenario::from_json(&text)?;
    let result = run(&s)?;
    write_outputs(&s, &result, out)?;
    Ok(result.summary)
}

pub fn write_outputs(s: &Scenario, result: &RunOutput, out: &Path) -> CliResult<()> {
    std::fs::create_dir_all(out).map_err(io(out))?;
    let csv = out.join(&s.output.timeseries);
    std::fs::write(&csv, result.table.to_csv()).map_err(io(&csv))?;
    let summary = out.join(&s.output.summary);
    let text = serde_json::to_string_pretty(&result.summary).unwrap_or_default();
    std::fs::write(&summary, text + "\n").map_err(io(&summary))?;
    Ok(())
}

fn point_vortices(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let (state, omega) = match &s.family {
        Family::VortexPolygon(p) => {
            let (st, w) = polygon_equilibrium(p.n, p.gamma, p.radius, p.center_gamma)?;
            (st, Some(w))
        }
        Family::ThreeVortexCollapse => (ThreeVortexCollapse::<f64>::new().state(0.0)?, None),
        Family::VortexCustom(p) => {
            let x = p.positions.iter().map(|&z| c64(z)).collect();
            (PointVortexState::new(x, p.circulations.clone())?, None)
        }
        _ => unreachable!(),
    };
    let it = s.integrator;
    let opts = PvOptions { dt: it.dt, t_end: it.t_end, collision_eps: s.events.collision_eps, sample_every: it.sample_every };
    let tr = pv_integrate_with(&state, &opts)?;
    c.steps = tr.substeps;
    c.events = tr.events.iter().map(EventRecord::from).collect();
    c.invariant("hamiltonian", tr.drift.hamiltonian);
    c.invariant("center", tr.drift.center);
    c.invariant("angular_momentum", tr.drift.angular_momentum);
    c.invariant("t_moment", tr.drift.t_moment);
    let n = state.len();
    let mut cols = vec!["t".to_string(), "hamiltonian".into(), "center_re".into(), "center_im".into(), "angular_momentum".into(), "t_moment".into(), "min_separation".into()];
    for j in 0..n {
        cols.push(format!("x{j}"));
        cols.push(format!("y{j}"));
    }
    let mut table = Table::new(cols);
    for smp in &tr.samples {
        let inv = smp.invariants;
        let mut row = vec![smp.time, inv.hamiltonian, inv.center.re, inv.center.im, inv.angular_momentum, inv.t_moment, smp.min_separation];
        for z in &smp.positions {
            row.push(z.re);
            row.push(z.im);
        }
        table.push(row);
    }
    if let Some(w) = omega {
        c.metric("omega_expected", w);
        let spectrum = pv_linear_spectrum(&state, w)?;
        c.metric("max_real_part", spectrum.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max));
        let mut worst = 0.0f64;
        let mut unwrapped = 0.0;
        let mut prev = state.positions[0];
        for smp in &tr.samples {
            let rotated = state.positions.iter().map(|z| z * Complex64::from_polar(1.0, w * smp.time));
            worst = worst.max(rotated.zip(&smp.positions).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
            unwrapped += (smp.positions[0] / prev).arg();
            prev = smp.positions[0];
        }
        let t_last = tr.samples.last().map_or(0.0, |x| x.time);
        if t_last > 0.0 {
            let measured = unwrapped / t_last;
            c.metric("omega_measured", measured);
            c.closed("omega_relative", ((measured - w) / w).abs());
        }
        c.closed("rigid_rotation", worst);
    }
    if matches!(s.family, Family::ThreeVortexCollapse) {
        let sol = ThreeVortexCollapse::<f64>::new();
        c.metric("tau", sol.tau);
        let mut worst = 0.0f64;
        for smp in tr.samples.iter().filter(|x| x.time <= 0.95 * sol.tau) {
            let exact = sol.positions(smp.time)?;
            worst = worst.max(exact.iter().zip(&smp.positions).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
        }
        c.closed("trajectory_to_0.95tau", worst);
        if let Some(e) = tr.events.first() {
            c.closed("collision_time", (e.time - sol.tau).abs());
        }
    }
    Ok(table)
}

fn filaments(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let grid = Grid1D::new(s.grid.length, s.grid.points)?;
    let zeros = ComplexField::zeros(grid.points());
    let polygon = |n: usize, r: f64| -> CliResult<(PointVortexState<f64>, BaseMotion<f64>)> {
        let (st, w) = polygon_equilibrium(n, 1.0, r, None)?;
        let base = BaseMotion::rotating(st.positions.clone(), Complex64::new(0.0, 0.0), w);
        Ok((st, base))
    };
    let mut expected: Option<(f64, Option<f64>)> = None;
    let mut conserved = true;
    let f0: FilamentField<f64> = match &s.family {
        Family::EmptyPerturbation(p) => {
            let (st, base) = polygon(p.n, p.radius)?;
            FilamentField::parallel(grid.clone(), &st, base)?
        }
        Family::ShiftedGaussian(p) => {
            let (st, base) = polygon(p.n, 1.0)?;
            let u = gaussian(&grid, c64(p.amplitude), 0.0, p.width);
            FilamentField::perturbation(grid.clone(), &st, base, vec![u; p.n])?
        }
        Family::GaussianPolygonCollapse(p) => {
            let tail = if p.tail > 0.0 { Some(collapse_tail(&grid, p.tail)?) } else { None };
            let sc = shifted_collapse(&grid, &BaseCollapse::GaussianPolygon { n: p.n, radius: p.radius, tail }, &zeros)?;
            expected = Some((sc.expected_time, sc.expected_sigma));
            conserved = false;
            sc.field
        }
        Family::ShiftedTriangle(p) => {
            let u = gaussian(&grid, c64(p.amplitude), 0.0, p.width);
            let sc = shifted_collapse(&grid, &BaseCollapse::ThreeVortex, &u)?;
            expected = Some((sc.expected_time, sc.expected_sigma));
            conserved = false;
            sc.field
        }
        Family::Parallelogram(p) => parallelogram_perturbation(
            grid.clone(),
            gaussian(&grid, c64(p.u1), 0.0, p.width),
            gaussian(&grid, c64(p.u2), 1.0, 1.5 * p.width),
        )?,
        _ => unreachable!(),
    };
    let it = s.integrator;
    let opts = KmdOptions {
        dt: it.dt,
        t_end: it.t_end,
        sample_every: it.sample_every,
        collision_ratio: s.events.collision_ratio,
        collision_eps: s.events.collision_eps,
        quantities: true,
        keep_fields: false,
        refine_events: s.events.refine,
    };
    let mut oracle = 0.0f64;
    let family = s.family.clone();
    let run = kmd_evolve_observed(&f0, &opts, |f| {
        match &family {
            Family::EmptyPerturbation(_) => {
                oracle = oracle.max(f.perturbations().iter().map(|u| u.max_abs()).fold(0.0, f64::max));
            }
            Family::ShiftedGaussian(p) => {
                let exact = ComplexField::from_fn(&f.grid, |x| free_gaussian(c64(p.amplitude), p.width, 1.0, f.time, x));
                for u in f.perturbations() {
                    oracle = oracle.max(u.max_abs_diff(&exact));
                }
            }
            Family::Parallelogram(_) => {
                let u = f.perturbations();
                oracle = oracle.max(u[0].zip_map(&u[2], |a, b| a + b).norm_l2(&f.grid));
                oracle = oracle.max(u[1].zip_map(&u[3], |a, b| a + b).norm_l2(&f.grid));
            }
            _ => {}
        }
        Ok(())
    })?;
    c.steps = run.steps;
    c.events = run.events.iter().map(EventRecord::from).collect();
    match &s.family {
        Family::EmptyPerturbation(_) => c.closed("perturbation_size", oracle),
        Family::ShiftedGaussian(_) => c.closed("free_schrodinger", oracle),
        Family::Parallelogram(_) => c.closed("parallelogram_symmetry", oracle),
        _ => {}
    }
    if let Some((time, sigma)) = expected {
        c.metric("expected_time", time);
        if let Some(e) = run.events.first() {
            c.closed("collision_time", (e.time - time).abs());
            if let (Some(a), Some(b)) = (e.sigma, sigma) {
                c.closed("collision_sigma", (a - b).abs());
            }
        }
    }
    let q0 = run.samples[0].quantities;
    if conserved {
        let mut de = 0.0f64;
        let mut dc = 0.0f64;
        let mut da = 0.0f64;
        for smp in &run.samples {
            if let (Some(q), Some(q0)) = (smp.quantities, q0) {
                de = de.max((q.e - q0.e).abs());
                dc = dc.max((q.center - q0.center).norm());
                da = da.max((q.a - q0.a).abs());
            }
        }
        c.invariant("energy", de);
        c.invariant("center", dc);
        c.invariant("angular_momentum", da);
    }
    let mut table = Table::new(["t", "min_ratio", "max_ratio", "min_distance", "h", "a", "t_moment", "i", "e"]);
    for smp in &run.samples {
        let sep = smp.separation;
        let q = smp.quantities;
        let g = |f: fn(&vortexlab_core::filaments::RenormalizedQuantities<f64>) -> f64| q.as_ref().map_or(f64::NAN, f);
        table.push(vec![smp.time, sep.min_ratio, sep.max_ratio, sep.min_distance, g(|q| q.h), g(|q| q.a), g(|q| q.t), g(|q| q.i), g(|q| q.e)]);
    }
    Ok(table)
}

fn polygon_profile(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let grid = Grid1D::new(s.grid.length, s.grid.points)?;
    let (phi, omega) = match &s.family {
        Family::GaussianCollapse(p) => (ComplexField::from_fn(&grid, gaussian_collapse_datum), p.omega),
        Family::GroundState(p) => (ComplexField::constant(grid.points(), Complex64::new(1.0, 0.0)), p.omega),
        Family::ProfileBump(p) => (
            ComplexField::from_fn(&grid, |x| Complex64::new(1.0 - p.amplitude * (-(x / p.width).powi(2)).exp(), 0.0)),
            p.omega,
        ),
        _ => unreachable!(),
    };
    let p0 = PolygonProfile::new(grid.clone(), phi, omega)?;
    let it = s.integrator;
    let opts = BmOptions { dt: it.dt, t_end: it.t_end, sample_every: it.sample_every, vanish_eps: s.events.vanish_eps, refine_events: s.events.refine };
    let run = bm_evolve(&p0, &opts)?;
    c.steps = run.steps;
    c.events = run.events.iter().map(EventRecord::from).collect();
    match &s.family {
        Family::GaussianCollapse(_) => {
            if let Some(e) = run.events.first() {
                c.closed("vanish_time", (e.time - 1.0).abs());
                if let Some(sig) = e.sigma {
                    c.closed("vanish_sigma", sig.abs());
                }
            }
        }
        Family::GroundState(_) => {
            c.closed("stationary", run.final_profile.phi.iter().map(|z| (z - 1.0).norm()).fold(0.0, f64::max));
        }
        _ => {}
    }
    if run.events.is_empty() {
        let e0 = run.samples[0].energy.unwrap_or(f64::NAN);
        let drift = run.samples.iter().map(|x| (x.energy.unwrap_or(f64::NAN) - e0).abs()).fold(0.0, f64::max);
        c.invariant("energy", drift);
    }
    let mut table = Table::new(["t", "energy", "energy_gp", "min_modulus", "sigma_min"]);
    let nodes = grid.nodes();
    for smp in &run.samples {
        table.push(vec![smp.time, smp.energy.unwrap_or(f64::NAN), smp.energy_gp.unwrap_or(f64::NAN), smp.min_modulus, nodes[smp.argmin]]);
    }
    Ok(table)
}

/// Largest `|bm_rhs_fd(v) - c v'|` over nodes clear of the grid ends.
pub fn wave_residual(grid: &Grid, c2: f64, omega: f64) -> CliResult<f64> {
    let w = traveling_wave(c2.sqrt(), omega)?;
    let p = PolygonProfile::new(grid.clone(), w.sample(grid, 0.0).1, omega)?;
    let r = bm_rhs_fd(&p)?;
    let nodes = grid.nodes();
    Ok((2 * FD_HALF_WIDTH..grid.points() - 2 * FD_HALF_WIDTH).map(|m| (r[m] - w.c * w.v_prime(nodes[m])).norm()).fold(0.0, f64::max))
}

/// Largest residual of the twisted helix in the full filament system.
pub fn helix_residual(grid: &Grid, c2: f64, omega: f64, n: usize) -> CliResult<f64> {
    let w = traveling_wave(c2.sqrt(), omega)?;
    let hx = helix_transform(&w, n)?;
    let f = hx.fields(grid, 0.0)?;
    let r = kmd_rhs_fd(&f)?;
    let nodes = grid.nodes();
    let mut worst = 0.0f64;
    for (j, rj) in r.iter().enumerate() {
        for m in 2 * FD_HALF_WIDTH..grid.points() - 2 * FD_HALF_WIDTH {
            let x = nodes[m];
            let pre = Complex64::from_polar(hx.radius, hx.nu * x + std::f64::consts::TAU * j as f64 / n as f64);
            worst = worst.max((rj[m] - pre * w.v_prime(x) * hx.speed()).norm());
        }
    }
    Ok(worst)
}

fn wave(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let Family::TravelingWave(p) = &s.family else { unreachable!() };
    let grid = Grid1D::new(s.grid.length, s.grid.points)?;
    let w = traveling_wave(p.c2.sqrt(), p.omega)?;
    let estimate = 1.5 * (2.0 * p.omega - p.c2) / p.omega;
    let residual = wave_residual(&grid, p.c2, p.omega)?;
    c.metric("eta_max", w.eta_max);
    c.metric("eta_max_estimate", estimate);
    c.metric("theta_plus", w.theta_plus);
    c.metric("theta_minus", w.theta_minus);
    c.metric("phase_jump", w.phase_jump().abs());
    c.closed("profile_residual", residual);
    c.closed("eta_max_vs_estimate", if estimate > 0.0 { (w.eta_max - estimate).abs() / estimate } else { w.eta_max });
    if p.helix >= 2 {
        let omega = (p.helix as f64 - 1.0) / 4.0;
        c.closed("helix_residual", helix_residual(&grid, p.c2 / p.omega * omega, omega, p.helix)?);
    }
    let mut table = Table::new(["t", "eta_max", "phase_jump", "profile_residual"]);
    table.push(vec![0.0, w.eta_max, w.phase_jump().abs(), residual]);
    Ok(table)
}

fn triangle(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let Family::SelfSimilarTriangle(p) = &s.family else { unreachable!() };
    let params = SelfSimilarParams::with_kappa(p.r0, p.alpha, p.kappa0)?;
    let regime = classify_regime(&params);
    let t_end = if s.integrator.t_end > 0.0 {
        s.integrator.t_end
    } else {
        match regime.t_critical {
            Some(t) if !regime.boundary => 2.0 * t,
            Some(t) => 0.99 * t,
            None => 0.99 * params.tau,
        }
    };
    c.metric("regime", regime.kind.name());
    c.metric("boundary", regime.boundary);
    c.metric("t_critical", regime.t_critical);
    c.metric("t_star", params.roots().map(|r| r.0));
    c.metric("tau", params.tau);
    c.metric("t_end", t_end);
    let run = selfsimilar_ode_solve(&params, t_end, s.integrator.dt)?;
    c.steps = run.samples.len().saturating_sub(1);
    c.events = run.event.iter().map(EventRecord::from).collect();
    if let (Some(e), Some(tc)) = (&run.event, regime.t_critical) {
        c.closed("event_time", (e.time - tc).abs());
    }
    let end = validity_end(&params);
    let mut worst = 0.0f64;
    let mut table = Table::new(["t", "r", "beta", "gamma"]);
    for (k, smp) in run.samples.iter().enumerate() {
        if k % s.integrator.sample_every == 0 || k + 1 == run.samples.len() {
            table.push(vec![smp.t, smp.r, smp.beta, smp.gamma]);
        }
        if smp.t < end {
            if let Ok(r2) = selfsimilar_r2(smp.t, &params) {
                worst = worst.max((smp.r * smp.r - r2).abs() / r2.max(1.0));
            }
        }
    }
    c.closed("r2_closed_form", worst);
    Ok(table)
}

fn amplitude(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let Family::CwAmplitude(p) = &s.family else { unreachable!() };
    let exact = gamma((1.0 - p.p) / 2.0) / gamma(0.5);
    c.metric("expected", exact);
    let mut table = Table::new(["t", "re", "im", "cutoff", "remainder"]);
    let mut worst = 0.0f64;
    let n = steps_of(s.integrator.dt, s.integrator.t_end).max(1);
    for k in 1..=n {
        let t = s.integrator.dt * k as f64;
        let a = cw_amplitude(p.p, t, p.tol)?;
        worst = worst.max((a.value - exact).norm());
        table.push(vec![t, a.value.re, a.value.im, a.cutoff, a.remainder]);
    }
    c.steps = n;
    c.closed("gamma_ratio", worst);
    Ok(table)
}

fn corner(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let Family::CornerAngle(p) = &s.family else { unreachable!() };
    let reach = 2.0 * p.window;
    let points = (2.0 * reach / p.spacing).round() as usize + 1;
    let curve = selfsimilar_profile(p.a, 1.0, -reach, reach, points)?;
    let angle = corner_angle(&curve, p.window)?;
    let predicted = corner_sin_half(p.a);
    let printed = (-p.a * p.a / 2.0).exp();
    let mid = curve.section(-20.0, 20.0)?;
    let f = hasimoto(&mid, HasimotoBranch::Frenet)?;
    let err = mid.nodes().iter().zip(f.psi.iter()).map(|(&x, z)| (z - selfsimilar_filament(p.a, 1.0, x)).norm()).fold(0.0, f64::max);
    c.metric("theta", angle.theta);
    c.metric("sin_half", angle.sin_half());
    c.metric("sin_half_pi_law", predicted);
    c.metric("sin_half_exp_law", printed);
    c.closed("corner_pi_law", (angle.sin_half() / predicted - 1.0).abs());
    c.closed("corner_exp_law", (angle.sin_half() / printed - 1.0).abs());
    c.closed("filament_function", err);
    let mut table = Table::new(["t", "theta", "sin_half", "sin_half_pi_law", "sin_half_exp_law"]);
    table.push(vec![1.0, angle.theta, angle.sin_half(), predicted, printed]);
    Ok(table)
}

fn curve(s: &Scenario, c: &mut Collector) -> CliResult<Table> {
    let (mut cur, exact_profile): (Curve3D<f64>, Option<(f64, f64)>) = match &s.family {
        Family::SelfSimilarCurve(p) => (selfsimilar_profile(p.a, p.t0, -p.s_max, p.s_max, p.points)?, Some((p.a, p.t0))),
        Family::CircleCurve(p) => (circle(p.radius, p.points)?, None),
        Family::HelixCurve(p) => (helix(p.radius, p.rate, p.points)?, None),
        Family::KnotCurve(p) => (knot(p.points)?, None),
        _ => unreachable!(),
    };
    let it = s.integrator;
    let n = steps_of(it.dt, it.t_end);
    let initial = cur.clone();
    let mut table = Table::new(["t", "length", "energy", "centroid_x", "centroid_y", "centroid_z"]);
    let sample = |cur: &Curve3D<f64>, t: f64, table: &mut Table| -> CliResult<(f64, f64)> {
        let (l, e) = (cur.length()?, cur.kinetic_energy());
        let g = centroid(&cur.x);
        table.push(vec![t, l, e, g[0], g[1], g[2]]);
        Ok((l, e))
    };
    let (l0, e0) = sample(&cur, 0.0, &mut table)?;
    let (mut dl, mut de, mut shape) = (0.0f64, 0.0f64, 0.0f64);
    for k in 1..=n {
        cur = bf_step(&cur, it.dt)?;
        if let Family::HelixCurve(_) = s.family {
            let dk = cur.curvature.iter().zip(&initial.curvature).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let dw = cur.torsion.iter().zip(&initial.torsion).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            shape = shape.max(dk).max(dw);
        }
        if k % it.sample_every == 0 || k == n {
            let (l, e) = sample(&cur, it.dt * k as f64, &mut table)?;
            dl = dl.max((l - l0).abs());
            de = de.max((e - e0).abs());
        }
    }
    c.steps = n;
    let t = it.dt * n as f64;
    match &s.family {
        Family::SelfSimilarCurve(p) => {
            let (a, t0) = exact_profile.unwrap_or((p.a, p.t0));
            let exact = selfsimilar_profile(a, t0 + t, -p.s_max, p.s_max, p.points)?;
            let window: Vec<usize> = (0..cur.len()).filter(|&m| cur.s(m).abs() <= p.window).collect();
            let x: Vec<_> = window.iter().map(|&m| cur.x[m]).collect();
            let y: Vec<_> = window.iter().map(|&m| exact.x[m]).collect();
            let fit = rigid_fit(&x, &y)?;
            c.closed("aligned_max_error", fit.max_error);
            c.metric("rigid_translation", fit.translation);
        }
        Family::CircleCurve(p) => {
            let g0 = centroid(&initial.x);
            let g = centroid(&cur.x);
            let d = [g[0] - g0[0], g[1] - g0[1], g[2] - g0[2] - t / p.radius];
            c.closed("translation", (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt());
            c.invariant("length", dl);
            c.invariant("energy", de);
        }
        Family::HelixCurve(_) => {
            c.closed("curvature_torsion_profiles", shape);
            c.invariant("energy", de);
        }
        Family::KnotCurve(_) => {
            c.invariant("length", dl);
            c.invariant("energy", de);
        }
        _ => {}
    }
    if t > 0.0 {
        c.metric("length_drift_rate", dl / t);
        c.metric("energy_drift_rate", de / t);
    }
    Ok(table)
}

/// Summary values as a flat map for sweep rows.
pub fn flat_metrics(summary: &RunSummary) -> BTreeMap<String, Value> {
    let mut out = BTreeMap::new();
    for (k, v) in &summary.metrics {
        out.insert(k.clone(), v.clone());
    }
    for (k, v) in &summary.closed_form {
        out.insert(format!("closed_form.{k}"), json!(v));
    }
    for (k, v) in &summary.invariants {
        out.insert(format!("drift.{k}"), json!(v));
    }
    out
}
