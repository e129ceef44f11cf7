use num_complex::Complex64 as C64;
use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::events::EventKind;

fn state(x: &[(f64, f64)], g: &[f64]) -> PointVortexState<f64> {
    PointVortexState::new(x.iter().map(|&(a, b)| C64::new(a, b)).collect(), g.to_vec()).unwrap()
}

#[test]
fn rhs_examples() {
    let v = pv_rhs(&state(&[(0.0, 0.0), (1.0, 0.0)], &[1.0, -1.0])).unwrap();
    assert!((v[0] - C64::new(0.0, 1.0)).norm() < 1e-15 && (v[1] - C64::new(0.0, 1.0)).norm() < 1e-15);
    let v = pv_rhs(&state(&[(-1.0, 0.0), (1.0, 0.0)], &[1.0, 1.0])).unwrap();
    assert!((v[0] - C64::new(0.0, -0.5)).norm() < 1e-15);
    assert!((v[1] - C64::new(0.0, 0.5)).norm() < 1e-15);
    assert_eq!(pv_rhs(&state(&[(3.0, 1.0)], &[2.0])).unwrap()[0], C64::new(0.0, 0.0));
    let coincident = state(&[(1.0, 1.0), (1.0, 1.0)], &[1.0, 1.0]);
    assert_eq!(pv_rhs(&coincident), Err(Error::Coincident { j: 0, k: 1 }));
}

#[test]
fn state_validation() {
    assert!(PointVortexState::<f64>::new(vec![], vec![]).is_err());
    assert!(PointVortexState::new(vec![C64::new(0.0, 0.0)], vec![0.0]).is_err());
    assert!(matches!(
        PointVortexState::new(vec![C64::new(0.0, 0.0)], vec![1.0, 2.0]),
        Err(Error::LengthMismatch { .. })
    ));
}

#[test]
fn invariant_examples() {
    let inv = pv_invariants(&state(&[(0.0, 0.0), (0.0, 1.0)], &[1.0, 1.0])).unwrap();
    assert!(inv.hamiltonian.abs() < 1e-15);
    let e = std::f64::consts::E;
    let inv = pv_invariants(&state(&[(0.0, 0.0), (0.0, e)], &[1.0, 1.0])).unwrap();
    assert!((inv.hamiltonian + 1.0).abs() < 1e-14);
    let s2 = 2f64.sqrt();
    let inv = pv_invariants(&state(&[(-1.0, 0.0), (1.0, 0.0), (1.0, s2)], &[2.0, 2.0, -1.0])).unwrap();
    assert!((inv.hamiltonian - 0.75f64.ln()).abs() < 1e-14);
    assert!(inv.t_moment.abs() < 1e-13);
    assert!((inv.center - C64::new(-1.0, -s2)).norm() < 1e-14);
}

#[test]
fn collapse_certificates() {
    let s2 = 2f64.sqrt();
    let c = collapse_check(&state(&[(-1.0, 0.0), (1.0, 0.0), (1.0, s2)], &[2.0, 2.0, -1.0])).unwrap();
    assert!(c.admissible && c.harmonic_sum == 0.0);
    let c = collapse_check(&state(&[(-1.0, 0.0), (1.0, 0.0), (0.0, 1.0)], &[1.0, 1.0, 1.0])).unwrap();
    assert!(!c.admissible && c.harmonic_sum == 3.0);
    let c = collapse_check(&state(&[(-1.0, 0.0), (1.0, 0.0), (0.0, 2.0)], &[2.0, 2.0, -1.0])).unwrap();
    assert!(!c.admissible && c.harmonic_sum == 0.0 && c.t_moment.abs() > 1.0);
    assert!(collapse_check(&state(&[(0.0, 0.0), (1.0, 0.0)], &[1.0, 1.0])).is_err());
}

#[test]
fn polygon_angular_velocities() {
    let (s, w) = polygon_equilibrium::<f64>(2, 1.0, 1.0, None).unwrap();
    assert!((w - 0.5).abs() < 1e-15 && s.len() == 2);
    let (_, w) = polygon_equilibrium::<f64>(4, 1.0, 1.0, Some(-1.5)).unwrap();
    assert!(w.abs() < 1e-15);
    for (n, g, r, g0) in [(3, 1.0, 2.0, None), (5, -0.7, 1.3, None), (4, 1.0, 1.0, Some(-1.5)), (6, 2.0, 0.5, Some(0.3))] {
        let (s, w) = polygon_equilibrium(n, g, r, g0).unwrap();
        let v = pv_rhs(&s).unwrap();
        for (vj, xj) in v.iter().zip(&s.positions) {
            assert!((vj - C64::new(0.0, w) * xj).norm() < 1e-13, "n={n}");
        }
    }
    let (_, w) = polygon_equilibrium::<f64>(3, 1.0, 2.0, None).unwrap();
    assert!((w - 0.25).abs() < 1e-15);
}

#[test]
fn three_vortex_closed_form() {
    let sol = ThreeVortexCollapse::<f64>::new();
    assert!((sol.tau - 3.0 / 2f64.sqrt()).abs() < 1e-15);
    let x0 = three_vortex_solution(0.0).unwrap();
    assert!((x0.positions[2] - C64::new(1.0, 2f64.sqrt())).norm() < 1e-15);
    let half = sol.positions(sol.tau / 2.0).unwrap();
    for j in 0..3 {
        let ratio = (half[j] - sol.center).norm() / (sol.initial[j] - sol.center).norm();
        assert!((ratio - 0.5f64.sqrt()).abs() < 1e-14);
    }
    let late = sol.positions(sol.tau * (1.0 - 1e-12)).unwrap();
    assert!(late.iter().all(|z| (z - sol.center).norm() < 1e-5));
    assert!(matches!(three_vortex_solution(sol.tau), Err(Error::Domain(_))));
}

#[test]
fn three_vortex_solves_the_system() {
    let sol = ThreeVortexCollapse::<f64>::new();
    let h = 1e-5;
    for m in 0..=30 {
        let t = 0.9 * sol.tau * m as f64 / 30.0 + h;
        let xp = sol.positions(t + h).unwrap();
        let xm = sol.positions(t - h).unwrap();
        let v = pv_rhs(&sol.state(t).unwrap()).unwrap();
        for j in 0..3 {
            assert!(((xp[j] - xm[j]) / (2.0 * h) - v[j]).norm() < 1e-6);
        }
    }
}

#[test]
fn polygon_returns_after_one_period() {
    let (s, w) = polygon_equilibrium(3, 1.0, 1.0, None).unwrap();
    let period = std::f64::consts::TAU / w;
    let tr = pv_integrate(&s, period, 1e-3, None).unwrap();
    assert!(tr.events.is_empty());
    for (a, b) in tr.final_state.positions.iter().zip(&s.positions) {
        assert!((a - b).norm() < 1e-6);
    }
}

#[test]
fn translating_pair() {
    let s = state(&[(0.0, 0.0), (1.0, 0.0)], &[1.0, -1.0]);
    let tr = pv_integrate(&s, 5.0, 1e-2, None).unwrap();
    for (a, b) in tr.final_state.positions.iter().zip(&s.positions) {
        assert!((a - (b + C64::new(0.0, 5.0))).norm() < 1e-8);
    }
}

#[test]
fn three_vortex_collision_time() {
    let sol = ThreeVortexCollapse::<f64>::new();
    let tr = pv_integrate(&sol.state(0.0).unwrap(), 2.5, 1e-3, None).unwrap();
    let ev = &tr.events[0];
    assert_eq!(ev.kind, EventKind::Collision);
    assert!((ev.time - sol.tau).abs() < 1e-3, "{}", ev.time);
}

#[test]
fn invariants_are_conserved() {
    let s = state(&[(0.3, 0.1), (-0.8, 0.4), (0.2, -1.1), (1.2, 0.9)], &[1.0, -0.5, 0.7, 1.3]);
    let tr = pv_integrate(&s, 1.0, 1e-3, None).unwrap();
    assert!(tr.events.is_empty());
    let i0 = tr.initial_invariants;
    assert!(tr.drift.hamiltonian < 1e-8 * (1.0 + i0.hamiltonian.abs()));
    assert!(tr.drift.center < 1e-8 * (1.0 + i0.center.norm()));
    assert!(tr.drift.angular_momentum < 1e-8 * (1.0 + i0.angular_momentum.abs()));
    assert!(tr.drift.t_moment < 1e-8 * (1.0 + i0.t_moment.abs()));
}

#[test]
fn thomson_polygons() {
    for n in 2..=7 {
        let (s, w) = polygon_equilibrium(n, 1.0, 1.0, None).unwrap();
        let ev = pv_linear_spectrum(&s, w).unwrap();
        assert_eq!(ev.len(), 2 * n);
        assert!(ev.last().unwrap().re <= 1e-6, "n={n}: {}", ev.last().unwrap().re);
    }
    let (s, w) = polygon_equilibrium(8, 1.0, 1.0, None).unwrap();
    assert!(pv_linear_spectrum(&s, w).unwrap().last().unwrap().re > 1e-3);
}

#[test]
fn jacobian_methods_agree() {
    for n in [2, 3, 5, 8] {
        let (s, w) = polygon_equilibrium(n, 1.0, 1.0, None).unwrap();
        let a = pv_jacobian(&s, w, JacobianMethod::Analytic).unwrap();
        let f = pv_jacobian(&s, w, JacobianMethod::FiniteDifference).unwrap();
        assert!((a - f).abs().max() < 1e-6);
    }
    let s = state(&[(0.0, 0.0), (1.0, 0.0)], &[1.0, 1.0]);
    assert!(matches!(pv_linear_spectrum(&s, 0.3), Err(Error::NotAnEquilibrium { .. })));
}

#[test]
fn generic_f32_instantiation() {
    let (s, w) = polygon_equilibrium::<f32>(3, 1.0, 1.0, None).unwrap();
    let tr = pv_integrate(&s, 1.0, 1e-2, None).unwrap();
    let expect = s.positions[0] * num_complex::Complex32::from_polar(1.0, w);
    assert!((tr.final_state.positions[0] - expect).norm() < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn same_sign_vortices_never_collide(
        pts in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0, 0.2f64..2.0), 3..5)
    ) {
        let x: Vec<C64> = pts.iter().map(|p| C64::new(p.0, p.1)).collect();
        let (d, _) = state(&pts.iter().map(|p| (p.0, p.1)).collect::<Vec<_>>(), &vec![1.0; pts.len()]).min_separation();
        prop_assume!(d > 0.3);
        let s = PointVortexState::new(x, pts.iter().map(|p| p.2).collect()).unwrap();
        let tr = pv_integrate_with(&s, &PvOptions { dt: 1e-2, t_end: 10.0, collision_eps: None, sample_every: 100 }).unwrap();
        prop_assert!(tr.events.is_empty());
    }

    #[test]
    fn scaling_covariance(lambda in 0.5f64..2.0) {
        let base = [(0.3, 0.1), (-0.8, 0.4), (0.2, -1.1)];
        let g = [1.0, -0.5, 0.7];
        let s = state(&base, &g);
        let scaled = state(&base.map(|(a, b)| (a * lambda, b * lambda)), &g);
        let t = 0.5;
        let a = pv_integrate(&s, t, 1e-3, None).unwrap().final_state;
        let b = pv_integrate(&scaled, t * lambda * lambda, 1e-3 * lambda * lambda, None).unwrap().final_state;
        for (p, q) in a.positions.iter().zip(&b.positions) {
            prop_assert!((p * lambda - q).norm() < 1e-7);
        }
    }

    #[test]
    fn invariants_conserved_along_random_runs(
        pts in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0), 2..5)
    ) {
        prop_assume!(pts.iter().all(|p| p.2.abs() > 0.2));
        let xs: Vec<(f64, f64)> = pts.iter().map(|p| (p.0, p.1)).collect();
        let s = state(&xs, &pts.iter().map(|p| p.2).collect::<Vec<_>>());
        prop_assume!(s.min_separation().0 > 0.5);
        let tr = pv_integrate(&s, 1.0, 1e-3, None).unwrap();
        prop_assume!(tr.events.is_empty() && tr.substeps == 1000);
        let i0 = tr.initial_invariants;
        prop_assert!(tr.drift.hamiltonian < 1e-8 * (1.0 + i0.hamiltonian.abs()));
        prop_assert!(tr.drift.angular_momentum < 1e-8 * (1.0 + i0.angular_momentum.abs()));
        prop_assert!(tr.drift.t_moment < 1e-8 * (1.0 + i0.t_moment.abs()));
        prop_assert!(tr.drift.center < 1e-8 * (1.0 + i0.center.norm()));
    }
}
