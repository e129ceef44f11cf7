use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn grid(l: f64, m: usize) -> Grid1D<f64> {
    Grid1D::new(l, m).unwrap()
}

#[test]
fn rejects_bad_grids() {
    assert!(matches!(Grid1D::<f64>::new(-1.0, 64), Err(Error::Usage(_))));
    assert!(matches!(Grid1D::<f64>::new(1.0, 100), Err(Error::Usage(_))));
    let g = grid(1.0, 64);
    let f = ComplexField::<f64>::zeros(32);
    assert!(matches!(spectral_d2(&f, &g), Err(Error::LengthMismatch { .. })));
}

#[test]
fn d2_of_fourier_mode() {
    let l = 40.0;
    let g = grid(l, 256);
    for n in [1usize, 5, 31] {
        let k = std::f64::consts::TAU * n as f64 / l;
        let f = ComplexField::from_fn(&g, |s| Complex64::from_polar(1.0, k * s));
        let d = spectral_d2(&f, &g).unwrap();
        let err = d.zip_map(&f, |a, b| a + b * k * k).max_abs();
        assert!(err < 1e-10, "n={n} err={err}");
    }
}

#[test]
fn d2_of_gaussian() {
    let g = grid(40.0, 512);
    let f = ComplexField::from_fn(&g, |s| Complex64::new((-s * s).exp(), 0.0));
    let exact = ComplexField::from_fn(&g, |s| Complex64::new((4.0 * s * s - 2.0) * (-s * s).exp(), 0.0));
    assert!(spectral_d2(&f, &g).unwrap().max_abs_diff(&exact) < 1e-12);
    let d1 = ComplexField::from_fn(&g, |s| Complex64::new(-2.0 * s * (-s * s).exp(), 0.0));
    assert!(spectral_d1(&f, &g).unwrap().max_abs_diff(&d1) < 1e-12);
}

fn free_gaussian(s: f64, kappa: f64, t: f64) -> Complex64 {
    let d = Complex64::new(1.0, 4.0 * kappa * t);
    (-(s * s) / d).exp() / d.sqrt()
}

#[test]
fn free_propagator_matches_gaussian_spreading() {
    let g = grid(80.0, 1024);
    let f = ComplexField::from_fn(&g, |s| free_gaussian(s, 1.0, 0.0));
    for (kappa, t) in [(1.0, 0.5), (-0.5, 1.0), (2.0, 0.25)] {
        let u = ComplexField::new(g.free_propagate(&f, kappa, t).unwrap());
        let exact = ComplexField::from_fn(&g, |s| free_gaussian(s, kappa, t));
        assert!(u.max_abs_diff(&exact) < 1e-12);
    }
}

#[test]
fn rk4_is_fourth_order() {
    let solve = |n: usize| {
        let dt = 1.0 / n as f64;
        let mut y = Complex64::new(1.0, 0.0);
        for m in 0..n {
            y = rk4_step(&y, m as f64 * dt, dt, |_, y| Ok(Complex64::new(0.0, 2.0) * y)).unwrap();
        }
        (y - Complex64::from_polar(1.0, 2.0)).norm()
    };
    let ratio = solve(20) / solve(40);
    assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
}

#[test]
fn rk4_flags_non_finite() {
    let r = rk4_step(&1.0f64, 0.0, 1.0, |_, _| Ok(f64::INFINITY));
    assert!(matches!(r, Err(Error::NonFinite(_))));
}

#[test]
fn split_step_carries_the_bright_soliton() {
    let g = grid(40.0, 512);
    let dt = 1e-3;
    let mut u = ComplexField::from_fn(&g, |s| Complex64::new(1.0 / s.cosh(), 0.0));
    for _ in 0..1000 {
        u = split_step(&u, &g, dt, 1.0, |z| z * (2.0 * z.norm_sqr())).unwrap();
    }
    let exact = ComplexField::from_fn(&g, |s| Complex64::from_polar(1.0 / s.cosh(), 1.0));
    assert!(u.max_abs_diff(&exact) < 2e-5, "{}", u.max_abs_diff(&exact));
}

#[test]
fn split_step_reports_singular_potential() {
    let g = grid(10.0, 64);
    let u = ComplexField::<f64>::zeros(64);
    let r = split_step(&u, &g, 1e-3, 1.0, |z| z / z.norm_sqr());
    assert!(matches!(r, Err(Error::SingularPotential { .. })));
}

#[test]
fn root_of_cos_minus_x() {
    let r = find_root(|x: f64| x.cos() - x, 0.0, 1.0, 1e-14).unwrap();
    assert!((r - 0.739_085_133_215_160_6).abs() < 1e-13);
    assert!(matches!(find_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12), Err(Error::NotBracketed { .. })));
    let r32 = find_root(|x: f32| x * x - 2.0, 0.0, 2.0, 1e-6).unwrap();
    assert!((r32 - std::f32::consts::SQRT_2).abs() < 1e-5);
}

#[test]
fn gauss_legendre_exactness() {
    for n in 1..12 {
        let rule = gauss_legendre(n);
        for p in 0..2 * n {
            let q: f64 = rule.iter().map(|(x, w)| w * x.powi(p as i32)).sum();
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            assert!((q - exact).abs() < 1e-13, "n={n} p={p}");
        }
    }
    let v: f64 = integrate_gl(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 4, 10).unwrap();
    assert!((v - 2.0).abs() < 1e-14);
}

#[test]
fn trapezoid_is_spectral_for_periodic_data() {
    let g = grid(40.0, 256);
    let v: Vec<f64> = g.nodes().iter().map(|s| (-s * s).exp()).collect();
    assert!((quad_trapezoid(&v, &g) - std::f64::consts::PI.sqrt()).abs() < 1e-14);
}

#[test]
fn cumulative_trapezoid_is_exact_on_lines() {
    let h = 0.1;
    let v: Vec<f64> = (0..21).map(|m| 3.0 * (m as f64 * h - 1.0)).collect();
    let c = cumulative_trapezoid(&v, h, 10);
    for (m, x) in c.iter().enumerate() {
        let s = m as f64 * h - 1.0;
        assert!((x - 1.5 * s * s).abs() < 1e-13);
    }
}

#[test]
fn finite_differences_converge_at_their_order() {
    let err = |n: usize| {
        let h = 2.0 / n as f64;
        let f: Vec<f64> = (0..=n).map(|m| (m as f64 * h).sin()).collect();
        let d1 = fd_d1(&f, h);
        let d2 = fd_d2(&f, h);
        let mid = n / 2;
        let x = mid as f64 * h;
        ((d1[mid] - x.cos()).abs(), (d2[mid] + x.sin()).abs())
    };
    let (a1, a2) = err(10);
    let (b1, b2) = err(20);
    assert!(a1 / b1 > 150.0, "{}", a1 / b1);
    assert!(a2 / b2 > 150.0, "{}", a2 / b2);
    let h = 0.01;
    let f: Vec<f64> = (0..50).map(|m| (m as f64 * h).powi(2)).collect();
    for d in fd_d2(&f, h) {
        assert!((d - 2.0).abs() < 1e-7);
    }
}

#[test]
fn generic_f32_grid() {
    let g = Grid1D::<f32>::new(20.0, 128).unwrap();
    let f = ComplexField::from_fn(&g, |s| num_complex::Complex32::new((-s * s).exp(), 0.0));
    let d = spectral_d2(&f, &g).unwrap();
    let exact = ComplexField::from_fn(&g, |s| num_complex::Complex32::new((4.0 * s * s - 2.0) * (-s * s).exp(), 0.0));
    assert!(d.max_abs_diff(&exact) < 1e-4);
}

proptest! {
    #[test]
    fn d2_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, w in 0.5f64..2.0) {
        let g = grid(40.0, 256);
        let f = ComplexField::from_fn(&g, |s| Complex64::new((-s * s).exp(), 0.0));
        let h = ComplexField::from_fn(&g, |s| Complex64::new(0.0, (-(s / w).powi(2)).exp()));
        let comb = f.zip_map(&h, |x, y| x * a + y * b);
        let lhs = spectral_d2(&comb, &g).unwrap();
        let rhs = spectral_d2(&f, &g).unwrap().zip_map(&spectral_d2(&h, &g).unwrap(), |x, y| x * a + y * b);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn free_propagation_is_unitary(kappa in -2.0f64..2.0, t in 0.0f64..3.0, shift in -5.0f64..5.0) {
        let g = grid(60.0, 512);
        let f = ComplexField::from_fn(&g, |s| Complex64::new((-(s - shift).powi(2)).exp(), (s * 0.3).sin() * (-(s * s) / 4.0).exp()));
        let u = ComplexField::new(g.free_propagate(&f, kappa, t).unwrap());
        prop_assert!((u.norm_l2(&g) - f.norm_l2(&g)).abs() < 1e-12);
        let back = ComplexField::new(g.free_propagate(&u, kappa, -t).unwrap());
        prop_assert!(back.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn bracketed_roots_are_found(r in -10.0f64..10.0, s in 0.1f64..5.0) {
        let f = |x: f64| (x - r) * (1.0 + s * (x - r).powi(2));
        let x = find_root(f, r - 7.0, r + 3.0, 1e-13).unwrap();
        prop_assert!((x - r).abs() < 1e-10);
    }
}

#[test]
fn fornberg_weights() {
    let w = fd_weights(0.0, &[-1.0, 0.0, 1.0], 2);
    assert_eq!(w[1], vec![-0.5, 0.0, 0.5]);
    assert_eq!(w[2], vec![1.0, -2.0, 1.0]);
    let x: Vec<f64> = (0..10).map(|j| j as f64 * 0.1).collect();
    let w = fd_weights(0.0, &x, 2);
    let d1: f64 = w[1].iter().zip(&x).map(|(w, x)| w * x.exp()).sum();
    let d2: f64 = w[2].iter().zip(&x).map(|(w, x)| w * x.exp()).sum();
    assert!((d1 - 1.0).abs() < 1e-8 && (d2 - 1.0).abs() < 1e-6);
}
