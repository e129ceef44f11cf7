use num_complex::Complex64 as C64;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

use super::*;
use crate::error::Error;
use crate::events::EventKind;
use crate::filaments::{kmd_evolve, kmd_rhs_fd, KmdOptions};
use crate::numerics::{ComplexField, Grid1D, FD_HALF_WIDTH};
use crate::pointvortex::ThreeVortexCollapse;

fn params(r0: f64, alpha: f64) -> SelfSimilarParams<f64> {
    SelfSimilarParams::new(r0, alpha).unwrap()
}

fn tstar(p: &SelfSimilarParams<f64>) -> f64 {
    p.alpha * p.tau * (1.0 - (1.0 - 2.0 * p.r0 * p.r0 / p.alpha).sqrt())
}

#[test]
fn parameters() {
    let p = params(0.9, 3.0);
    assert!((p.tau * p.b - 0.5).abs() < 1e-15);
    assert!((p.a - 5.0 / 6.0).abs() < 1e-15);
    assert!(matches!(SelfSimilarParams::new(1.0, 2.0), Err(Error::Inadmissible(_))));
    assert!(SelfSimilarParams::new(0.9, 0.0).is_err());
}

#[test]
fn closed_forms_agree() {
    for (r0, alpha) in [(0.9, 0.5), (0.9, 1.5), (0.9, 3.0), (0.75, 1.2), (0.5, 0.3)] {
        let p = params(r0, alpha);
        assert!((selfsimilar_r2(0.0, &p).unwrap() - r0 * r0).abs() < 1e-15);
        let end = validity_end(&p);
        for k in 0..50 {
            let t = end * k as f64 / 50.0;
            let a = selfsimilar_r2(t, &p).unwrap();
            let b = selfsimilar_r2_factored(t, &p).unwrap();
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        }
        assert!(matches!(selfsimilar_r2(end, &p), Err(Error::Domain(_))));
        assert!(selfsimilar_r2(-0.1, &p).is_err());
    }
}

#[test]
fn collapse_time_examples() {
    let p = params(0.9, 3.0);
    let (t1, t2) = p.roots().unwrap();
    assert!((t1 - 2.0477127).abs() < 1e-6 * 2.0477127);
    assert!(t1 < p.tau && t2 > p.tau);
    let p = params(0.9, 1.0 / (2.0 * (1.0 - 0.81)));
    assert!((p.roots().unwrap().0 - p.tau).abs() < 1e-12);
    let r = classify_regime(&p);
    assert_eq!(r.kind, RegimeKind::RegularThroughTau);
    assert!(r.boundary && r.t_critical == Some(p.tau));
}

#[test]
fn regime_examples() {
    let r = classify_regime(&params(0.9, 0.5));
    assert_eq!(r.kind, RegimeKind::BlowupAtAlphaTau);
    assert!((r.t_critical.unwrap() - 1.060660).abs() < 1e-6);
    let r = classify_regime(&params(0.9, 1.5));
    assert_eq!(r.kind, RegimeKind::RegularThroughTau);
    assert_eq!(r.t_critical, None);
    let r = classify_regime(&params(0.9, 3.0));
    assert_eq!(r.kind, RegimeKind::CollapseAtTstar);
    assert!((r.t_critical.unwrap() - 2.0477127).abs() < 1e-6);
    // Below r0 = 1/√2 the middle interval still collapses, before ατ.
    let p = params(0.6, 0.8);
    let r = classify_regime(&p);
    assert_eq!(r.kind, RegimeKind::CollapseAtTstar);
    assert!(r.t_critical.unwrap() < p.alpha * p.tau);
}

fn u_residual(p: &SelfSimilarParams<f64>) -> f64 {
    let end = validity_end(p);
    let mut worst = 0.0f64;
    for k in 1..100 {
        let t = 0.95 * end * k as f64 / 100.0;
        let h = 1e-3 * (end - t).min(t);
        let u = |s: f64| selfsimilar_r2(s, p).unwrap();
        let du = (8.0 * (u(t + h) - u(t - h)) - u(t + 2.0 * h) + u(t - 2.0 * h)) / (12.0 * h);
        let (a, b) = (u(t) / (p.alpha * p.tau - t), (1.0 - u(t)) / (p.tau - t));
        worst = worst.max((du - (a - b)).abs() / (a.abs() + b.abs()));
    }
    worst
}

#[test]
fn closed_form_solves_the_ode() {
    for (r0, alpha) in [(0.9, 0.5), (0.9, 1.5), (0.9, 3.0), (0.8, 2.0), (0.95, 0.9)] {
        let r = u_residual(&params(r0, alpha));
        assert!(r < 1e-8, "({r0}, {alpha}): {r}");
    }
}

#[test]
fn ode_matches_closed_form() {
    for (r0, alpha) in [(0.9, 0.5), (0.9, 3.0)] {
        let p = params(r0, alpha);
        let end = 0.9 * validity_end(&p);
        let run = selfsimilar_ode_solve(&p, end, 1e-3).unwrap();
        assert!(run.event.is_none());
        for s in &run.samples {
            let u = selfsimilar_r2(s.t, &p).unwrap();
            assert!((s.r * s.r - u).abs() < 1e-8 * u);
            assert_eq!(s.gamma, 4.0 * (s.t - alpha * p.tau));
        }
    }
}

#[test]
fn ode_collapse_time() {
    let p = params(0.9, 3.0);
    let run = selfsimilar_ode_solve(&p, 3.0, 1e-3).unwrap();
    let ev = run.event.unwrap();
    assert_eq!(ev.kind, EventKind::Collapse);
    assert!((ev.time - tstar(&p)).abs() < 1e-6 * tstar(&p));
}

#[test]
fn phase_starts_at_rate_a() {
    let p = params(0.9, 3.0);
    let h = 1e-4;
    let rate = (selfsimilar_beta(h, &p).unwrap() - selfsimilar_beta(0.0, &p).unwrap()) / h;
    let expect = p.a * (1.0 - 0.81) / 0.81;
    assert!((rate - expect).abs() < 1e-4);
    let run = selfsimilar_ode_solve(&p, 1.0, 1e-3).unwrap();
    let last = run.samples.last().unwrap();
    assert!((last.beta - selfsimilar_beta(last.t, &p).unwrap()).abs() < 1e-9);
}

#[test]
fn regime_lattice() {
    let rmin = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..20 {
        let r0 = rmin + (1.0 - rmin) * (i as f64 + 0.5) / 20.0;
        for j in 0..20 {
            let alpha = 0.2 + 3.8 * j as f64 / 19.0;
            let p = params(r0, alpha);
            let regime = classify_regime(&p);
            let t_end = regime.t_critical.map_or(0.99 * p.tau, |t| 2.0 * t);
            let run = selfsimilar_ode_solve(&p, t_end, 1e-3).unwrap();
            match regime.kind {
                RegimeKind::RegularThroughTau => {
                    assert!(run.event.is_none(), "({r0}, {alpha})");
                    for s in &run.samples {
                        let scaled = s.r * (1.0 - s.t / p.tau).sqrt();
                        assert!(scaled > 1e-2 && scaled < 1e2);
                    }
                }
                kind => {
                    let ev = run.event.unwrap_or_else(|| panic!("({r0}, {alpha}) no event"));
                    let tc = regime.t_critical.unwrap();
                    let expected = if kind == RegimeKind::CollapseAtTstar { EventKind::Collapse } else { EventKind::BlowUp };
                    assert_eq!(ev.kind, expected);
                    assert!((ev.time - tc).abs() < 1e-5 * tc, "({r0}, {alpha}): {} vs {tc}", ev.time);
                    if kind == RegimeKind::CollapseAtTstar {
                        assert!(tc < p.tau);
                    }
                }
            }
        }
    }
}

#[test]
fn triangle_profile_residual() {
    let p = params(0.9, 3.0);
    let sol = ThreeVortexCollapse::<f64>::new();
    let (h, k) = (1e-3, 1e-2);
    let mut worst = 0.0f64;
    for t in [0.2, 1.0, 1.8] {
        let w = sol.omega(t);
        for m in -20..=20 {
            let s = 0.2 * m as f64;
            let phi = selfsimilar_phi(t, s, &p).unwrap();
            let dt = (selfsimilar_phi(t + h, s, &p).unwrap() * 8.0 - selfsimilar_phi(t - h, s, &p).unwrap() * 8.0
                - selfsimilar_phi(t + 2.0 * h, s, &p).unwrap()
                + selfsimilar_phi(t - 2.0 * h, s, &p).unwrap())
                / (12.0 * h);
            let f = |x: f64| selfsimilar_phi(t, x, &p).unwrap();
            let d2 = (-f(s + 2.0 * k) + f(s + k) * 16.0 - phi * 30.0 + f(s - k) * 16.0 - f(s - 2.0 * k)) / (12.0 * k * k);
            let r = C64::i() * dt + d2 + w * phi * (1.0 - phi.norm_sqr()) / phi.norm_sqr();
            worst = worst.max(r.norm());
        }
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn triangle_solves_the_filament_system() {
    let p = params(0.9, 3.0);
    let g = Grid1D::new(16.0, 1024).unwrap();
    let t = 1.0;
    let h = 1e-3;
    let f = triangle_filament_solution(&g, t, &p).unwrap();
    let r = kmd_rhs_fd(&f).unwrap();
    let fp = triangle_filament_solution(&g, t + h, &p).unwrap();
    let fm = triangle_filament_solution(&g, t - h, &p).unwrap();
    let fp2 = triangle_filament_solution(&g, t + 2.0 * h, &p).unwrap();
    let fm2 = triangle_filament_solution(&g, t - 2.0 * h, &p).unwrap();
    let mut worst = 0.0f64;
    for j in 0..3 {
        for m in 2 * FD_HALF_WIDTH..g.points() - 2 * FD_HALF_WIDTH {
            let dt = (8.0 * (fp.fields[j][m] - fm.fields[j][m]) - fp2.fields[j][m] + fm2.fields[j][m]) / (12.0 * h);
            worst = worst.max((r[j][m] - dt).norm());
        }
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn collapse_and_blowup_scaling() {
    let g = Grid1D::new(8.0, 64).unwrap();
    let p = params(0.9, 3.0);
    let ts = tstar(&p);
    let mut ratios = Vec::new();
    for e in [1e-2, 1e-3, 1e-4, 1e-5] {
        let f = triangle_filament_solution(&g, ts * (1.0 - e), &p).unwrap();
        for m in 0..g.points() {
            ratios.push((f.fields[0][m] - f.fields[1][m]).norm() / e.sqrt());
        }
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(lo > 0.0 && hi / lo < 10.0);
    assert!(triangle_filament_solution(&g, ts, &p).is_err());

    let p = params(0.9, 0.5);
    let at = p.alpha * p.tau;
    let sol = ThreeVortexCollapse::<f64>::new();
    for e in [1e-2, 1e-3, 1e-4] {
        let f = triangle_filament_solution(&g, at * (1.0 - e), &p).unwrap();
        let sup = f.fields[0].iter().map(|z| (z - sol.center).norm()).fold(0.0, f64::max);
        let scaled = sup * e.sqrt();
        assert!(scaled > 0.1 && scaled < 10.0);
        let x = sol.positions(at * (1.0 - e)).unwrap();
        let ratio = (f.fields[0][0] - f.fields[1][0]).norm() / (x[0] - x[1]).norm();
        assert!(ratio > 1.0);
    }
}

#[test]
fn gaussian_examples() {
    assert!(gaussian_collapse(1.0f64, 0.0).norm() < 1e-15);
    assert!((gaussian_collapse(0.0f64, 30.0) - 1.0).norm() < 1e-15);
    let d = (1.0 - gaussian_collapse(0.0f64, 0.0)).norm();
    assert!((d - 17f64.powf(-0.25)).abs() < 1e-15);
    assert!(gaussian_collapse(0.0f64, 0.0).norm() > 0.5);
}

#[test]
fn gaussian_solves_the_free_equation() {
    let (h, k) = (1e-3, 1e-2);
    let mut worst = 0.0f64;
    for t in [0.0, 0.5, 0.9, 1.3] {
        for m in -30..=30 {
            let s = 0.1 * m as f64;
            let f = |t: f64, x: f64| gaussian_collapse(t, x);
            let dt = (8.0 * (f(t + h, s) - f(t - h, s)) - f(t + 2.0 * h, s) + f(t - 2.0 * h, s)) / (12.0 * h);
            let d2 = (-f(t, s + 2.0 * k) + 16.0 * f(t, s + k) - 30.0 * f(t, s) + 16.0 * f(t, s - k) - f(t, s - 2.0 * k))
                / (12.0 * k * k);
            worst = worst.max((C64::i() * dt + d2).norm());
        }
    }
    assert!(worst < 1e-7, "{worst}");
}

fn tail(g: &Grid1D<f64>, eps: f64) -> GaussianTail<f64> {
    let u = ComplexField::from_fn(g, |y| C64::new(eps * (-(y - 2.0) * (y - 2.0)).exp(), 0.0));
    let v = ComplexField::from_fn(g, |y| C64::new(0.0, eps * (-(y + 3.0) * (y + 3.0) / 2.0).exp()));
    GaussianTail::project(g, &u, &v).unwrap()
}

#[test]
fn tails_keep_the_collapse() {
    let g = Grid1D::new(160.0, 4096).unwrap();
    let tl = tail(&g, 0.05);
    assert!(tl.moment < 1e-10);
    let phi = gaussian_collapse_field(&g, 1.0, Some(&tl)).unwrap();
    assert!(phi[g.points() / 2].norm() < 1e-10);
    let phi0 = gaussian_collapse_field(&g, 0.0, Some(&tl)).unwrap();
    assert!(phi0.min_abs().1 > 0.4);
    let bad = ComplexField::from_fn(&g, |y| C64::new((-y * y).exp(), 0.0));
    assert!(matches!(GaussianTail::new(&g, bad, 1e-6), Err(Error::Inadmissible(_))));
}

#[test]
fn zero_shift_leaves_the_base() {
    let g = Grid1D::new(20.0, 128).unwrap();
    let zero = ComplexField::zeros(128);
    let s = shifted_collapse(&g, &BaseCollapse::ThreeVortex, &zero).unwrap();
    assert!(s.field.fields.iter().all(|u| u.max_abs() == 0.0));
    let base = BaseCollapse::GaussianPolygon { n: 3, radius: 1.0, tail: None };
    let s = shifted_collapse(&g, &base, &zero).unwrap();
    let x = &s.field.base_positions;
    for (j, u) in s.field.fields.iter().enumerate() {
        let expect = ComplexField::from_fn(&g, |y| x[j] * (gaussian_collapse(0.0, y) - 1.0));
        assert!(u.max_abs_diff(&expect) < 1e-15);
    }
    assert_eq!(s.expected_time, 1.0);
}

#[test]
fn shifted_triangle_collides_at_tau() {
    let g = Grid1D::new(40.0, 256).unwrap();
    let u0 = ComplexField::from_fn(&g, |y: f64| C64::new(0.3, 0.1) * (-y * y).exp());
    let s = shifted_collapse(&g, &BaseCollapse::ThreeVortex, &u0).unwrap();
    let opts = KmdOptions { quantities: false, sample_every: 100, ..KmdOptions::new(1e-3, 2.5) };
    let run = kmd_evolve(&s.field, &opts).unwrap();
    let ev = &run.events[0];
    assert_eq!(ev.kind, EventKind::Collision);
    assert!((ev.time - s.expected_time).abs() < 2e-2, "{}", ev.time);
}

#[test]
fn centred_square_collides_at_the_origin() {
    let g = Grid1D::<f64>::new(40.0, 2048).unwrap();
    let base = BaseCollapse::GaussianPolygon { n: 4, radius: 1.0, tail: None };
    let s = shifted_collapse(&g, &base, &ComplexField::zeros(2048)).unwrap();
    let opts = KmdOptions { quantities: false, sample_every: 100, ..KmdOptions::new(5e-4, 1.5) };
    let ev = kmd_evolve(&s.field, &opts).unwrap().events[0].clone();
    assert!((ev.time - 1.0).abs() < 2e-3, "{}", ev.time);
    assert!(ev.sigma.unwrap().abs() < 2e-3, "{:?}", ev);
}

#[test]
fn gaussian_polygon_with_tail_collides() {
    let g = Grid1D::new(80.0, 1024).unwrap();
    let base = BaseCollapse::GaussianPolygon { n: 3, radius: 1.0, tail: Some(tail(&g, 0.05)) };
    let s = shifted_collapse(&g, &base, &ComplexField::zeros(1024)).unwrap();
    let opts = KmdOptions { quantities: false, sample_every: 100, ..KmdOptions::new(1e-3, 1.5) };
    let run = kmd_evolve(&s.field, &opts).unwrap();
    let ev = &run.events[0];
    assert!((ev.time - 1.0).abs() < 2e-3, "{}", ev.time);
    // The tail bends the zero set, so σ is only resolved to the grid.
    assert!(ev.sigma.unwrap().abs() < g.spacing(), "{:?}", ev);
}

#[test]
fn amplitude_law() {
    let exact = gamma(0.25) / gamma(0.5);
    assert!((exact - 2.0455313).abs() < 1e-6);
    for t in [0.5, 1.0, 2.0, 5.0] {
        let a = cw_amplitude(0.5, t, 1e-8).unwrap();
        assert!((a.value.re - exact).abs() < 1e-6, "t = {t}: {}", a.value);
        assert!(a.value.im.abs() < 1e-6);
        assert!(a.remainder < 1e-8);
    }
    for p in [0.1, 0.3, 0.7] {
        let a = cw_amplitude(p, 1.0, 1e-8).unwrap();
        assert!((a.value - gamma((1.0 - p) / 2.0) / gamma(0.5)).norm() < 1e-6);
    }
    let a = cw_amplitude(1e-3, 1.0, 1e-8).unwrap();
    assert!((a.value - 1.0).norm() < 1e-3);
    assert!(cw_amplitude(1.0, 1.0, 1e-8).is_err());
    assert!(cw_amplitude(0.5, 0.0, 1e-8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(15))]

    #[test]
    fn residual_in_every_regime(r0 in 0.72f64..0.98, alpha in 0.2f64..4.0) {
        let p = params(r0, alpha);
        prop_assume!((alpha - 1.0).abs() > 0.05 && (alpha - p.collapse_threshold()).abs() > 0.05);
        prop_assert!(u_residual(&p) < 1e-8);
        if classify_regime(&p).kind == RegimeKind::CollapseAtTstar {
            prop_assert!(tstar(&p) < p.tau);
        }
    }
}

