//! Batch checks of the model invariants, grouped into suites.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use statrs::function::gamma::gamma;
use vortexlab_core::binormal::{corner_angle, corner_sin_half, hasimoto, selfsimilar_filament, selfsimilar_profile, HasimotoBranch};
use vortexlab_core::collapse::{
    classify_regime, cw_amplitude, selfsimilar_ode_solve, selfsimilar_r2, validity_end, RegimeKind, SelfSimilarParams,
};
use vortexlab_core::filaments::{convexity_violations, galilean_boost, kmd_evolve, BaseMotion, FilamentField, KmdOptions};
use vortexlab_core::numerics::{fd_d1, fd_d2, gauss_legendre, rk4_step, split_step, ComplexField, Grid1D};
use vortexlab_core::pointvortex::{polygon_equilibrium, pv_integrate_with, pv_linear_spectrum, PointVortexState, PvOptions, ThreeVortexCollapse};
use vortexlab_core::polygonflow::{bm_energy, traveling_wave, PolygonProfile};
use vortexlab_core::EventKind;

use crate::error::{CliError, CliResult};
use crate::fixtures::{c64, gaussian};
use crate::runner::{helix_residual, run, wave_residual, RunSummary};
use crate::scenario::Scenario;

pub const SUITES: [&str; 7] = ["numerics", "pointvortex", "filaments", "polygonflow", "collapse", "binormal", "all"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A documented bound that does not hold; reported, not counted as a failure.
    Deviation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub criterion: Option<u8>,
    pub name: String,
    pub value: f64,
    /// `value < tolerance` for upper bounds, `value > tolerance` for lower bounds.
    pub tolerance: f64,
    pub upper: bool,
    pub status: CheckStatus,
    pub note: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, tolerance: f64, upper: bool) -> Self {
        let ok = if upper { value <= tolerance } else { value > tolerance };
        Check {
            suite: "",
            criterion: None,
            name: name.into(),
            value,
            tolerance,
            upper,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            note: None,
        }
    }

    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check::new(name, value, tolerance, true)
    }

    pub fn above(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check::new(name, value, tolerance, false)
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::below(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    /// Marks a failure of this check as a known deviation.
    pub fn known(mut self, reason: &str) -> Self {
        if self.status == CheckStatus::Fail {
            self.status = CheckStatus::Deviation;
        }
        self.note = Some(reason.into());
        self
    }

    pub fn line(&self) -> String {
        let rel = if self.upper { "<=" } else { ">" };
        let status = match self.status {
            CheckStatus::Pass => "PASS".to_string(),
            CheckStatus::Fail => "FAIL".to_string(),
            CheckStatus::Deviation => format!("FAIL (known: {})", self.note.as_deref().unwrap_or("")),
        };
        format!("{status} {}/{}: {:.6e} {rel} {:.1e}", self.suite, self.name, self.value, self.tolerance)
    }
}

pub struct Unit {
    pub suite: &'static str,
    pub criterion: Option<u8>,
    pub name: &'static str,
    pub run: fn(u64) -> CliResult<Vec<Check>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub deviations: usize,
    pub seconds: f64,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn text(&self) -> String {
        let mut out: String = self.checks.iter().map(|c| c.line() + "\n").collect();
        out += &format!(
            "{}: {} passed, {} failed, {} known deviations ({:.1} s)\n",
            self.suite, self.passed, self.failed, self.deviations, self.seconds
        );
        out
    }
}

pub fn units() -> Vec<Unit> {
    let u = |suite, criterion, name, run| Unit { suite, criterion, name, run };
    vec![
        u("numerics", None, "convergence", numerics),
        u("pointvortex", Some(1), "polygon rotation", polygon_rotation),
        u("pointvortex", Some(2), "polygon spectrum", polygon_spectrum),
        u("pointvortex", Some(3), "three-vortex collapse", three_vortex),
        u("filaments", Some(4), "shifted Gaussian", shifted_gaussian),
        u("polygonflow", Some(5), "profile collapse", profile_collapse),
        u("filaments", Some(5), "filament collapse", filament_collapse),
        u("collapse", Some(6), "self-similar regimes", regimes),
        u("polygonflow", Some(7), "traveling waves", waves),
        u("collapse", Some(8), "amplitude law", amplitude),
        u("binormal", Some(9), "corner law", corner),
        u("filaments", Some(10), "convexity and symmetries", filament_properties),
        u("polygonflow", Some(10), "energy bounds", energy_bounds),
        u("binormal", Some(10), "binormal invariants", binormal_invariants),
    ]
}

pub fn run_unit(unit: &Unit, seed: u64) -> CliResult<Vec<Check>> {
    let mut checks = (unit.run)(seed)?;
    for c in &mut checks {
        c.suite = unit.suite;
        c.criterion = unit.criterion;
    }
    Ok(checks)
}

pub fn verify(suite: &str, seed: u64) -> CliResult<Report> {
    if !SUITES.contains(&suite) {
        return Err(CliError::Usage(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
    }
    let start = Instant::now();
    let mut checks = Vec::new();
    for unit in units().iter().filter(|u| suite == "all" || u.suite == suite) {
        checks.extend(run_unit(unit, seed)?);
    }
    let count = |s| checks.iter().filter(|c| c.status == s).count();
    Ok(Report {
        suite: suite.into(),
        seed,
        passed: count(CheckStatus::Pass),
        failed: count(CheckStatus::Fail),
        deviations: count(CheckStatus::Deviation),
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn scenario(value: serde_json::Value) -> CliResult<RunSummary> {
    Ok(run(&Scenario::from_value(value)?)?.summary)
}

fn closed(summary: &RunSummary, key: &str) -> f64 {
    summary.closed_form.get(key).copied().unwrap_or(f64::NAN)
}

fn numerics(_: u64) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let g = Grid1D::new(40.0, 512)?;
    let f = ComplexField::from_fn(&g, |s: f64| Complex64::new((-s * s).exp(), 0.0));
    let d2 = f.d2(&g)?;
    let exact = ComplexField::from_fn(&g, |s: f64| Complex64::new((4.0 * s * s - 2.0) * (-s * s).exp(), 0.0));
    out.push(Check::below("spectral second derivative", d2.max_abs_diff(&exact), 1e-10));

    let fd_err = |n: usize| {
        let h = 2.0 / n as f64;
        let f: Vec<f64> = (0..=n).map(|m| (m as f64 * h).sin()).collect();
        let mid = n / 2;
        let x = mid as f64 * h;
        ((fd_d1(&f, h)[mid] - x.cos()).abs(), (fd_d2(&f, h)[mid] + x.sin()).abs())
    };
    let (a, b) = (fd_err(10), fd_err(20));
    out.push(Check::above("eighth-order first difference ratio", a.0 / b.0, 150.0));
    out.push(Check::above("eighth-order second difference ratio", a.1 / b.1, 150.0));

    let rk4 = |n: usize| -> CliResult<f64> {
        let dt = 1.0 / n as f64;
        let mut y = Complex64::new(1.0, 0.0);
        for m in 0..n {
            y = rk4_step(&y, m as f64 * dt, dt, |_, y| Ok(Complex64::new(0.0, 2.0) * y))?;
        }
        Ok((y - Complex64::from_polar(1.0, 2.0)).norm())
    };
    out.push(Check::below("RK4 order ratio deviation from 16", (rk4(20)? / rk4(40)? - 16.0).abs(), 1.0));

    let soliton = |dt: f64| -> CliResult<f64> {
        let steps = (0.5 / dt).round() as usize;
        let mut u = ComplexField::from_fn(&g, |s| Complex64::new(1.0 / s.cosh(), 0.0));
        for _ in 0..steps {
            u = split_step(&u, &g, dt, 1.0, |z| z * (2.0 * z.norm_sqr()))?;
        }
        Ok(u.max_abs_diff(&ComplexField::from_fn(&g, |s| Complex64::from_polar(1.0 / s.cosh(), 0.5))))
    };
    let ratio = soliton(0.01)? / soliton(0.005)?;
    out.push(Check::below("Strang order ratio deviation from 4", (ratio - 4.0).abs(), 0.5));

    let rule = gauss_legendre(8);
    let exact15 = rule.iter().map(|(x, w)| w * x.powi(14)).sum::<f64>() - 2.0 / 15.0;
    out.push(Check::below("Gauss-Legendre exactness", exact15.abs(), 1e-14));
    Ok(out)
}

fn polygon_rotation(_: u64) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=7 {
        let (state, omega) = polygon_equilibrium(n, 1.0, 1.0, None)?;
        let expected = (n as f64 - 1.0) / 2.0;
        let tr = pv_integrate_with(&state, &PvOptions { sample_every: 1, ..PvOptions::new(1e-3, 1.0) })?;
        let mut angle = 0.0;
        for w in tr.samples.windows(2) {
            angle += (w[1].positions[0] / w[0].positions[0]).arg();
        }
        let t = tr.samples.last().map_or(1.0, |s| s.time);
        out.push(Check::below(format!("N={n} angular velocity"), ((angle / t) - expected).abs() / expected, 1e-6));
        out.push(Check::below(format!("N={n} equilibrium frequency"), (omega - expected).abs(), 1e-14));
    }
    Ok(out)
}

fn polygon_spectrum(_: u64) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let (state, omega) = polygon_equilibrium(n, 1.0, 1.0, None)?;
        let growth = pv_linear_spectrum(&state, omega)?.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        out.push(if n <= 7 {
            Check::below(format!("N={n} max real part"), growth, 1e-6)
        } else {
            Check::above(format!("N={n} max real part"), growth, 1e-3)
        });
    }
    Ok(out)
}

fn three_vortex(_: u64) -> CliResult<Vec<Check>> {
    let sol = ThreeVortexCollapse::<f64>::new();
    let s0 = sol.state(0.0)?;
    let tr = pv_integrate_with(&s0, &PvOptions { sample_every: 1, ..PvOptions::new(1e-3, 2.5) })?;
    let mut worst = 0.0f64;
    for smp in tr.samples.iter().filter(|s| s.time <= 0.95 * sol.tau) {
        let exact = sol.positions(smp.time)?;
        worst = worst.max(exact.iter().zip(&smp.positions).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
    }
    let event = tr.events.iter().find(|e| e.kind == EventKind::Collision);
    let dt_err = event.map_or(f64::INFINITY, |e| (e.time - sol.tau).abs());
    let early = pv_integrate_with(&s0, &PvOptions::new(1e-3, 0.9 * sol.tau))?;
    let d = early.drift;
    let cli = scenario(json!({"model": "pointvortex", "family": "three-vortex-collapse"}))?;
    let cli_err = cli.events.first().map_or(f64::INFINITY, |e| (e.time - 3.0 / 2f64.sqrt()).abs());
    Ok(vec![
        Check::below("trajectory up to 0.95 tau", worst, 1e-5),
        Check::below("collision time", dt_err, 1e-3),
        Check::below("scenario collision time", cli_err, 1e-3),
        Check::below("hamiltonian drift to 0.9 tau", d.hamiltonian, 1e-8),
        Check::below("center drift to 0.9 tau", d.center, 1e-8),
        Check::below("angular momentum drift to 0.9 tau", d.angular_momentum, 1e-8),
        Check::below("second moment drift to 0.9 tau", d.t_moment, 1e-8),
    ])
}

fn shifted_gaussian(_: u64) -> CliResult<Vec<Check>> {
    let s = scenario(json!({
        "model": "filaments", "family": "shifted-gaussian",
        "params": {"n": 3, "amplitude": [0.1, 0.0], "width": 1.0},
        "grid": {"length": 40.0, "points": 1024},
        "integrator": {"dt": 1e-3, "t_end": 1.0, "sample_every": 10}
    }))?;
    Ok(vec![
        Check::below("free Schrodinger evolution on [0, 1]", closed(&s, "free_schrodinger"), 1e-7),
        Check::holds("no collision", s.events.is_empty()),
    ])
}

fn collapse_checks(s: &RunSummary) -> Vec<Check> {
    vec![
        Check::holds("event recorded", !s.events.is_empty()),
        Check::below("collapse time", s.events.first().map_or(f64::INFINITY, |e| (e.time - 1.0).abs()), 2e-3),
        Check::below("collapse height", s.events.first().and_then(|e| e.sigma).map_or(f64::INFINITY, f64::abs), 2e-3),
    ]
}

fn profile_collapse(_: u64) -> CliResult<Vec<Check>> {
    let s = scenario(json!({"model": "polygonflow", "family": "gaussian-collapse", "params": {"omega": 0.0}}))?;
    Ok(collapse_checks(&s).into_iter().map(|c| Check { name: format!("profile {}", c.name), ..c }).collect())
}

fn filament_collapse(_: u64) -> CliResult<Vec<Check>> {
    let s = scenario(json!({"model": "filaments", "family": "gaussian-polygon-collapse", "params": {"n": 4}}))?;
    Ok(collapse_checks(&s).into_iter().map(|c| Check { name: format!("filaments {}", c.name), ..c }).collect())
}

fn r2_residual(p: &SelfSimilarParams<f64>) -> CliResult<f64> {
    let end = validity_end(p);
    let mut worst = 0.0f64;
    for k in 1..100 {
        let t = 0.95 * end * k as f64 / 100.0;
        let h = 1e-3 * (end - t).min(t);
        let u = |s: f64| selfsimilar_r2(s, p);
        let du = (8.0 * (u(t + h)? - u(t - h)?) - u(t + 2.0 * h)? + u(t - 2.0 * h)?) / (12.0 * h);
        let (a, b) = (u(t)? / (p.alpha * p.tau - t), (1.0 - u(t)?) / (p.tau - t));
        worst = worst.max((du - (a - b)).abs() / (a.abs() + b.abs()));
    }
    Ok(worst)
}

fn regimes(_: u64) -> CliResult<Vec<Check>> {
    let rmin = std::f64::consts::FRAC_1_SQRT_2;
    let mut mismatches = 0usize;
    let mut worst_time = 0.0f64;
    for i in 0..20 {
        let r0 = rmin + (1.0 - rmin) * (i as f64 + 0.5) / 20.0;
        for j in 0..20 {
            let alpha = 0.2 + 3.8 * j as f64 / 19.0;
            let p = SelfSimilarParams::new(r0, alpha)?;
            let regime = classify_regime(&p);
            let t_end = regime.t_critical.map_or(0.99 * p.tau, |t| 2.0 * t);
            let run = selfsimilar_ode_solve(&p, t_end, 1e-3)?;
            let agrees = match (regime.kind, &run.event, regime.t_critical) {
                (RegimeKind::RegularThroughTau, None, _) => true,
                (RegimeKind::CollapseAtTstar, Some(e), Some(tc)) if e.kind == EventKind::Collapse => {
                    worst_time = worst_time.max((e.time - tc).abs() / tc);
                    true
                }
                (RegimeKind::BlowupAtAlphaTau, Some(e), Some(tc)) if e.kind == EventKind::BlowUp => {
                    worst_time = worst_time.max((e.time - tc).abs() / tc);
                    true
                }
                _ => false,
            };
            mismatches += usize::from(!agrees);
        }
    }
    let p = SelfSimilarParams::new(0.9, 3.0)?;
    let t_star = p.roots().map_or(f64::NAN, |r| r.0);
    let run = selfsimilar_ode_solve(&p, 3.0, 1e-3)?;
    let ode = run.event.map_or(f64::NAN, |e| e.time);
    let mut residual = 0.0f64;
    for (r0, alpha) in [(0.9, 0.5), (0.9, 1.5), (0.9, 3.0), (0.8, 2.0), (0.95, 0.9)] {
        residual = residual.max(r2_residual(&SelfSimilarParams::new(r0, alpha)?)?);
    }
    Ok(vec![
        Check::below("lattice classification mismatches", mismatches as f64, 0.0),
        Check::below("lattice event times (relative)", worst_time, 1e-5),
        Check::below("t* from the ODE vs closed form (relative)", (ode - t_star).abs() / t_star, 1e-6),
        Check::below("t* vs 2.047717 (relative)", (t_star - 2.047717).abs() / t_star, 1e-6)
            .known("the closed-form root is 2.0477127"),
        Check::below("closed-form r^2 residual in the ODE", residual, 1e-8),
    ])
}

fn waves(_: u64) -> CliResult<Vec<Check>> {
    let g = Grid1D::new(32.0, 2048)?;
    let mut out = Vec::new();
    let mut jumps = Vec::new();
    for c2 in [1.9, 1.95, 1.99] {
        let w = traveling_wave(f64::sqrt(c2), 1.0)?;
        let estimate = 1.5 * (2.0 - c2);
        out.push(Check::below(format!("c2={c2} profile residual"), wave_residual(&g, c2, 1.0)?, 1e-6));
        out.push(Check::below(format!("c2={c2} eta_max vs cubic estimate"), (w.eta_max - estimate).abs() / estimate, 0.15));
        jumps.push(w.phase_jump().abs());
    }
    out.push(Check::holds("phase jump decreasing in c2", jumps.windows(2).all(|p| p[1] < p[0])));
    for n in [2, 3, 4] {
        let omega = (n as f64 - 1.0) / 4.0;
        out.push(Check::below(format!("helix n={n} filament residual"), helix_residual(&g, 1.95 * omega, omega, n)?, 1e-6));
    }
    Ok(out)
}

fn amplitude(_: u64) -> CliResult<Vec<Check>> {
    let exact = gamma(0.25) / gamma(0.5);
    let mut values = Vec::new();
    for t in [0.5, 1.0, 2.0] {
        values.push((t, cw_amplitude(0.5, t, 1e-8)?.value));
    }
    let mut out = Vec::new();
    let mut spread = 0.0f64;
    for &(t, v) in &values {
        out.push(Check::below(format!("t={t} vs Gamma(1/4)/Gamma(1/2)"), (v - exact).norm(), 1e-4));
        out.push(Check::below(format!("t={t} imaginary part"), v.im.abs(), 1e-4));
        spread = spread.max((v - values[0].1).norm());
    }
    out.push(Check::below("spread across t", spread, 1e-4));
    out.push(Check::below("Gamma ratio vs 2.045694", (exact - 2.045694).abs(), 1e-4).known("Gamma(1/4)/Gamma(1/2) is 2.0455313"));
    Ok(out)
}

fn corner(_: u64) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for a in [0.5f64, 1.0] {
        let curve = selfsimilar_profile(a, 1.0, -400.0, 400.0, 80001)?;
        let angle = corner_angle(&curve, 200.0)?;
        let printed = (-a * a / 2.0).exp();
        out.push(
            Check::below(format!("a={a} sin(theta/2) vs exp(-a^2/2)"), (angle.sin_half() / printed - 1.0).abs(), 0.02)
                .known("the curve follows exp(-pi a^2/2)"),
        );
        out.push(Check::below(
            format!("a={a} sin(theta/2) vs exp(-pi a^2/2)"),
            (angle.sin_half() / corner_sin_half(a) - 1.0).abs(),
            0.02,
        ));
        let mid = curve.section(-20.0, 20.0)?;
        let psi = hasimoto(&mid, HasimotoBranch::Frenet)?;
        let err = mid.nodes().iter().zip(psi.psi.iter()).map(|(&s, z)| (z - selfsimilar_filament(a, 1.0, s)).norm()).fold(0.0, f64::max);
        out.push(Check::below(format!("a={a} filament function on |s| <= 20"), err, 1e-4));
    }
    Ok(out)
}

fn filament_properties(_: u64) -> CliResult<Vec<Check>> {
    let (lower, upper) = convexity_violations(0.75, 1.25, 1e-4);
    let sharp = (0..=5000).all(|m| {
        let x = 0.75 + m as f64 * 1e-4;
        let q = (x - 1.0) * (x - 1.0);
        q / (2.0 * x.max(1.0)) <= x - 1.0 - x.ln() + 1e-15
    });
    let par = scenario(json!({"model": "filaments", "family": "parallelogram"}))?;

    let g = Grid1D::new(40.0, 512)?;
    let s = PointVortexState::new(vec![Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0)], vec![1.0, 1.0])?;
    let base = BaseMotion::detect(&s)?;
    let fields = vec![gaussian(&g, c64([0.1, 0.0]), 0.0, 1.0), gaussian(&g, c64([0.0, 0.1]), 1.0, 1.0)];
    let f = FilamentField::perturbation(g.clone(), &s, base, fields)?;
    let nu = 2.0 * std::f64::consts::TAU / 40.0;
    let opts = KmdOptions { quantities: false, ..KmdOptions::new(5e-4, 0.5) };
    let a = galilean_boost(&kmd_evolve(&f, &opts)?.final_state, nu)?.field;
    let b = kmd_evolve(&galilean_boost(&f, nu)?.field, &opts)?.final_state;
    let boost = a
        .positions()
        .iter()
        .zip(b.positions().iter())
        .map(|(x, y)| x.max_abs_diff(y))
        .fold(0.0, f64::max);
    Ok(vec![
        Check::below("convexity (x-1)^2/2 <= x-1-ln x violations", lower.len() as f64, 0.0)
            .known("fails for x in (1, 5/4]; (x-1)^2/(2 max(1, x)) holds"),
        Check::holds("convexity (x-1)^2/(2 max(1, x)) <= x-1-ln x", sharp),
        Check::below("convexity x-1-ln x <= 10(x-1)^2 violations", upper.len() as f64, 0.0),
        Check::below("parallelogram symmetry defect", closed(&par, "parallelogram_symmetry"), 1e-10),
        Check::below("Galilean boost commutes with evolution", boost, 1e-6),
    ])
}

fn energy_bounds(seed: u64) -> CliResult<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Grid1D::new(40.0, 512)?;
    let (mut upper, mut lower, mut count) = (0usize, 0usize, 0usize);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    while count < 100 {
        let (a, b) = (rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2));
        let (w, omega) = (rng.gen_range(0.5..3.0), rng.gen_range(0.2..2.0));
        let phi = ComplexField::from_fn(&g, |s: f64| {
            let bump = (-(s / w).powi(2)).exp();
            f64::sqrt(1.0 + a * bump) * Complex64::from_polar(1.0, b * bump)
        });
        let sup = phi.iter().map(|z| (z.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
        if !(sup <= 0.25 && sup > 1e-3) {
            continue;
        }
        count += 1;
        let (e, gp) = bm_energy(&PolygonProfile::new(g.clone(), phi, omega)?)?;
        upper += usize::from(e > 5.0 * gp);
        lower += usize::from(e < gp);
        lo = lo.min(e / gp);
        hi = hi.max(e / gp);
    }
    Ok(vec![
        Check::below("E <= 5 E_GP violations in 100 profiles", upper as f64, 0.0),
        Check::below("E_GP <= E violations in 100 profiles", lower as f64, 0.0)
            .known(&format!("E/E_GP ranges over [{lo:.3}, {hi:.3}]; E < E_GP where |Phi| > 1")),
        Check::above("smallest E/E_GP", lo, 0.0),
    ])
}

fn binormal_invariants(_: u64) -> CliResult<Vec<Check>> {
    let knot = scenario(json!({"model": "binormal", "family": "knot", "integrator": {"dt": 1e-4, "t_end": 0.1, "sample_every": 100}}))?;
    let circle = scenario(json!({"model": "binormal", "family": "circle", "params": {"radius": 2.0}}))?;
    let helix = scenario(json!({"model": "binormal", "family": "helix", "integrator": {"dt": 5e-4, "t_end": 0.05, "sample_every": 10}}))?;
    let t = 0.1;
    Ok(vec![
        Check::below("closed curve length drift / t", knot.invariants["length"] / t, 1e-8),
        Check::below("closed curve energy drift / t", knot.invariants["energy"] / t, 1e-6),
        Check::below("circle translation", closed(&circle, "translation"), 1e-10),
        Check::below("helix curvature and torsion", closed(&helix, "curvature_torsion_profiles"), 1e-6),
    ])
}
