use num_complex::Complex64 as C64;
use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::filaments::{kmd_rhs_fd, renormalized_quantities, BaseMotion, FilamentField};
use crate::numerics::{ComplexField, Grid1D, FD_HALF_WIDTH};
use crate::pointvortex::polygon_equilibrium;

fn grid(l: f64, m: usize) -> Grid1D<f64> {
    Grid1D::new(l, m).unwrap()
}

fn profile(g: &Grid1D<f64>, omega: f64, f: impl Fn(f64) -> C64) -> PolygonProfile<f64> {
    PolygonProfile::new(g.clone(), ComplexField::from_fn(g, f), omega).unwrap()
}

fn gaussian_collapse_datum(s: f64) -> C64 {
    let d = C64::new(1.0, -4.0);
    1.0 - (-(s * s) / d).exp() / d.sqrt()
}

#[test]
fn rhs_examples() {
    let g = grid(10.0, 64);
    let r = bm_rhs(&profile(&g, 1.0, |_| C64::new(1.0, 0.0))).unwrap();
    assert_eq!(r.max_abs(), 0.0);
    let r0 = 0.8;
    let p = profile(&g, 1.0, |_| C64::new(r0, 0.0));
    let rate = (1.0 - r0 * r0) / (r0 * r0);
    for z in bm_rhs(&p).unwrap().iter() {
        assert!((z - C64::new(0.0, rate * r0)).norm() < 1e-12);
    }
    let p = profile(&g, 0.0, |s| C64::new((-s * s).exp(), 0.3 * s.sin()));
    let free = ComplexField::new(g.d2(&p.phi).unwrap().into_iter().map(|z| C64::i() * z).collect());
    assert!(bm_rhs(&p).unwrap().max_abs_diff(&free) < 1e-14);
}

#[test]
fn vanished_profile_is_an_error() {
    let g = grid(10.0, 64);
    let p = profile(&g, 1.0, |s| C64::new(s, 0.0));
    assert_eq!(p.vanished(), Some(32));
    assert!(matches!(bm_rhs(&p), Err(Error::Vanishing { index: 32 })));
    assert!(bm_energy(&p).is_err());
}

#[test]
fn energy_examples() {
    let g = grid(20.0, 256);
    assert_eq!(bm_energy(&profile(&g, 1.0, |_| C64::new(1.0, 0.0))).unwrap(), (0.0, 0.0));
    let f = |s: f64| C64::new(1.0 + 0.1 * (-s * s).exp(), 0.0);
    let (e, gp) = bm_energy(&profile(&grid(20.0, 512), 1.0, f)).unwrap();
    let (e_ref, gp_ref) = bm_energy(&profile(&grid(20.0, 8192), 1.0, f)).unwrap();
    assert!((e - e_ref).abs() < 1e-9 && (gp - gp_ref).abs() < 1e-9);
    // Kinetic part is ∫|f'|²/2 = 0.01·√(π/2)/2.
    let kinetic = 0.01 * (std::f64::consts::PI / 2.0).sqrt() / 2.0;
    let (e0, gp0) = bm_energy(&profile(&grid(20.0, 512), 0.0, f)).unwrap();
    assert!((e0 - kinetic).abs() < 1e-12 && (gp0 - kinetic).abs() < 1e-12);
}

#[test]
fn polygon_energy_is_n_times_profile_energy() {
    let g = grid(20.0, 256);
    let phi = ComplexField::from_fn(&g, |s| C64::new(1.0 - 0.2 * (-s * s).exp(), 0.1 * s * (-s * s / 2.0).exp()));
    for n in 2..6 {
        let (state, omega) = polygon_equilibrium(n, 1.0, 1.0, None).unwrap();
        let fields = state.positions.iter().map(|&x| phi.map(|z| x * z)).collect();
        let base = BaseMotion::rotating(state.positions.clone(), C64::new(0.0, 0.0), omega);
        let f = FilamentField::absolute(g.clone(), &state, base, fields).unwrap();
        let e = renormalized_quantities(&f).unwrap().e;
        let (e_phi, _) = bm_energy(&PolygonProfile::new(g.clone(), phi.clone(), omega).unwrap()).unwrap();
        assert!((e - n as f64 * e_phi).abs() < 1e-10 * e.abs().max(1.0), "n = {n}");
    }
}

#[test]
fn ground_state_is_stationary() {
    let g = grid(10.0, 64);
    let run = bm_evolve(&profile(&g, 1.0, |_| C64::new(1.0, 0.0)), &BmOptions::new(0.01, 1.0)).unwrap();
    assert!(run.events.is_empty());
    assert!(run.final_profile.phi.iter().all(|z| (z - 1.0).norm() < 1e-14));
}

#[test]
fn zero_omega_is_free_propagation() {
    let g = grid(40.0, 512);
    let p = profile(&g, 0.0, |s| 1.0 + 0.3 * C64::new(1.0, 0.5) * (-s * s).exp());
    let run = bm_evolve(&p, &BmOptions::new(0.01, 0.5)).unwrap();
    let d = C64::new(1.0, 4.0 * 0.5);
    let exact = ComplexField::from_fn(&g, |s| 1.0 + 0.3 * C64::new(1.0, 0.5) * (-(s * s) / d).exp() / d.sqrt());
    assert!(run.final_profile.phi.max_abs_diff(&exact) < 1e-8);
}

#[test]
fn gaussian_collapse_vanishes_at_unit_time() {
    let g = grid(40.0, 2048);
    let p = profile(&g, 0.0, gaussian_collapse_datum);
    let run = bm_evolve(&p, &BmOptions::new(5e-4, 1.5)).unwrap();
    let ev = &run.events[0];
    assert!((ev.time - 1.0).abs() < 2e-3, "{}", ev.time);
    assert!(ev.sigma.unwrap().abs() < 2e-3);
}

#[test]
fn energy_is_conserved() {
    let g = grid(40.0, 512);
    let p = profile(&g, 1.0, |s| C64::new(1.0 - 0.1 * (-s * s).exp(), 0.05 * (-s * s).exp() * s));
    let run = bm_evolve(&p, &BmOptions { sample_every: 100, ..BmOptions::new(1e-3, 2.0) }).unwrap();
    assert!(run.events.is_empty());
    let e0 = run.samples[0].energy.unwrap();
    let drift = run.samples.iter().map(|s| (s.energy.unwrap() - e0).abs()).fold(0.0, f64::max);
    assert!(drift < 1e-6, "{drift}");
}

#[test]
fn bracket_expansion() {
    let (c, w) = (1.9f64.sqrt(), 1.0);
    for eta in [1e-3, 1e-2, 5e-2] {
        let series = (2.0 * w - c * c) * eta * eta - 2.0 * w / 3.0 * eta.powi(3);
        assert!((profile_bracket(c, w, eta) - series).abs() < 2.0 * eta.powi(4));
        let closed = -(c * c - 4.0 * w) * eta * eta + 4.0 * w * ((eta - 1.0) * (-eta).ln_1p() - eta);
        assert!((profile_bracket(c, w, eta) - closed).abs() < 1e-15);
    }
}

#[test]
fn sonic_and_supersonic_limits() {
    let w = traveling_wave(2f64.sqrt(), 1.0).unwrap();
    assert_eq!(w.eta_max, 0.0);
    assert_eq!(w.v(3.0), C64::new(1.0, 0.0));
    assert!(matches!(traveling_wave(1.5f64, 1.0), Err(Error::Inadmissible(_))));
    assert!(traveling_wave(0.3f64, 1.0).is_err());
}

#[test]
fn traveling_wave_shape() {
    let mut jumps = Vec::new();
    for c2 in [1.9f64, 1.95, 1.99] {
        let w = traveling_wave(c2.sqrt(), 1.0).unwrap();
        let estimate = 1.5 * (2.0 - c2);
        assert!((w.eta_max - estimate).abs() < 0.15 * estimate);
        assert!(profile_bracket(w.c, 1.0, w.eta_max).abs() < 1e-15);
        let mut prev = w.eta(0.0);
        for k in 1..2000 {
            let s = 0.05 * k as f64;
            let e = w.eta(s);
            assert!(e <= prev && e >= 0.0);
            assert_eq!(e, w.eta(-s));
            assert_eq!(w.theta(s), -w.theta(-s));
            prev = e;
        }
        let end = w.table_length();
        assert!((w.v(end) - C64::from_polar(1.0, w.theta_plus)).norm() < 1e-8);
        assert!((w.v(-end) - C64::from_polar(1.0, w.theta_minus)).norm() < 1e-8);
        jumps.push(w.phase_jump().abs());
    }
    assert!(jumps[0] > jumps[1] && jumps[1] > jumps[2]);
}

#[test]
fn profile_satisfies_its_ode() {
    let w = traveling_wave(1.95f64.sqrt(), 1.0).unwrap();
    let h = 1.0 / 512.0;
    let mut worst = 0.0f64;
    for k in 64..20_000 {
        let s = k as f64 * h;
        let fd = (w.eta(s + h) - w.eta(s - h)) / (2.0 * h);
        let exact = -profile_bracket(w.c, 1.0, w.eta(s)).max(0.0).sqrt();
        worst = worst.max((fd - exact).abs());
    }
    assert!(worst < 1e-6, "{worst}");
}

fn wave_residual(c2: f64) -> f64 {
    let w = traveling_wave(c2.sqrt(), 1.0).unwrap();
    let g = grid(32.0, 2048);
    let p = PolygonProfile::new(g.clone(), w.sample(&g, 0.0).1, 1.0).unwrap();
    let r = bm_rhs_fd(&p).unwrap();
    let nodes = g.nodes();
    (2 * FD_HALF_WIDTH..g.points() - 2 * FD_HALF_WIDTH)
        .map(|m| (r[m] - w.c * w.v_prime(nodes[m])).norm())
        .fold(0.0, f64::max)
}

#[test]
fn traveling_wave_residual() {
    for c2 in [1.9, 1.95, 1.99] {
        let r = wave_residual(c2);
        assert!(r < 1e-6, "c² = {c2}: {r}");
    }
}

#[test]
fn helix_examples() {
    let w = traveling_wave(1.9f64.sqrt(), 1.0).unwrap();
    let hx = helix_transform(&w, 3).unwrap();
    assert!((hx.speed() - (w.c - 2.0)).abs() < 1e-15);
    for s in [-2.0, 0.0, 0.7] {
        let expect = hx.radius * C64::from_polar(1.0, s) * w.v(s);
        assert!((hx.value(0, 0.0, s) - expect).norm() < 1e-14);
        let m = hx.value(0, 0.4, s).norm();
        for j in 1..3 {
            assert!((hx.value(j, 0.4, s).norm() - m).abs() < 1e-14);
        }
    }
    assert!(helix_transform(&w, 1).is_err());
}

fn helix_residual(c2: f64, n: usize) -> f64 {
    let w = traveling_wave(c2.sqrt(), (n as f64 - 1.0) / 2.0 * 0.5).unwrap();
    let hx = helix_transform(&w, n).unwrap();
    let g = grid(32.0, 2048);
    let f = hx.fields(&g, 0.0).unwrap();
    let r = kmd_rhs_fd(&f).unwrap();
    let nodes = g.nodes();
    let mut worst = 0.0f64;
    for (j, rj) in r.iter().enumerate() {
        for m in 2 * FD_HALF_WIDTH..g.points() - 2 * FD_HALF_WIDTH {
            let s = nodes[m];
            let pre = C64::from_polar(hx.radius, hx.nu * s + std::f64::consts::TAU * j as f64 / n as f64);
            let dt = pre * w.v_prime(s) * hx.speed();
            worst = worst.max((rj[m] - dt).norm());
        }
    }
    worst
}

#[test]
fn helix_solves_the_filament_system() {
    for n in [2, 3, 4] {
        let omega = (n as f64 - 1.0) / 4.0;
        let r = helix_residual(1.95 * omega, n);
        assert!(r < 1e-6, "n = {n}: {r}");
    }
}

#[test]
fn single_precision_profile() {
    let g = Grid1D::<f32>::new(10.0, 64).unwrap();
    let p = PolygonProfile::new(g.clone(), ComplexField::from_fn(&g, |_| num_complex::Complex32::new(1.0, 0.0)), 1.0).unwrap();
    assert_eq!(bm_rhs(&p).unwrap().max_abs(), 0.0);
    let w = traveling_wave(1.9f32.sqrt(), 1.0).unwrap();
    assert!((w.eta_max - 0.15).abs() < 0.03);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn energy_ratio_bounds(a in -0.2f64..0.2, b in -0.2f64..0.2, w in 0.5f64..3.0, omega in 0.2f64..2.0) {
        let g = grid(40.0, 512);
        let p = profile(&g, omega, |s| {
            let bump = (-(s / w).powi(2)).exp();
            (1.0 + a * bump).sqrt() * C64::from_polar(1.0, b * bump)
        });
        let sup = p.phi.iter().map(|z| (z.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
        prop_assume!(sup <= 0.25 && sup > 1e-3);
        let (e, gp) = bm_energy(&p).unwrap();
        prop_assert!(e <= 5.0 * gp);
        prop_assert!(e >= 0.8 * gp && e <= 4.0 / 3.0 * gp);
        if a < 0.0 {
            prop_assert!(e >= gp);
        }
    }
}
