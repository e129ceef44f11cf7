use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::events::{Event, EventKind};
use crate::filaments::{BaseMotion, FilamentField};
use crate::numerics::{integrate_gl, rk4_step, ComplexField, Grid1D};
use crate::pointvortex::ThreeVortexCollapse;
use crate::scalar::{lit, Real};

/// Parameters of the self-similar profile `Φ = r e^{iβ} e^{iσ²/γ}` around the
/// collapsing triangle, with `γ(t) = 4κ0(t - ατ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarParams<T> {
    pub r0: T,
    pub alpha: T,
    pub kappa0: T,
    pub a: T,
    pub b: T,
    pub tau: T,
}

impl<T: Real> SelfSimilarParams<T> {
    pub fn new(r0: T, alpha: T) -> Result<Self> {
        Self::with_kappa(r0, alpha, T::one())
    }

    pub fn with_kappa(r0: T, alpha: T, kappa0: T) -> Result<Self> {
        if !(r0 > T::zero()) || !(alpha > T::zero()) || kappa0 == T::zero() || !kappa0.is_finite() {
            return usage("self-similar parameters need r0 > 0, α > 0 and κ0 ≠ 0");
        }
        if r0 >= T::one() {
            return Err(Error::Inadmissible(format!("r0 = {r0} ≥ 1 admits no self-similar collapse")));
        }
        let sol = ThreeVortexCollapse::<T>::new();
        Ok(SelfSimilarParams { r0, alpha, kappa0, a: sol.omega_bar.re, b: sol.omega_bar.im, tau: sol.tau })
    }

    pub fn gamma(&self, t: T) -> T {
        lit::<T>(4.0) * self.kappa0 * (t - self.alpha * self.tau)
    }

    /// `t* ≤ t_*`, the roots of `t² - 2ατt + 2ατ²r0²`, when real.
    pub fn roots(&self) -> Option<(T, T)> {
        let disc = T::one() - lit::<T>(2.0) * self.r0 * self.r0 / self.alpha;
        if disc < T::zero() {
            return None;
        }
        let at = self.alpha * self.tau;
        Some((at * (T::one() - disc.sqrt()), at * (T::one() + disc.sqrt())))
    }

    /// `α = 1/(2(1 - r0²))`, where `t* = τ`.
    pub fn collapse_threshold(&self) -> T {
        T::one() / (lit::<T>(2.0) * (T::one() - self.r0 * self.r0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    BlowupAtAlphaTau,
    RegularThroughTau,
    CollapseAtTstar,
}

impl RegimeKind {
    pub fn name(self) -> &'static str {
        match self {
            RegimeKind::BlowupAtAlphaTau => "blowup_at_alpha_tau",
            RegimeKind::RegularThroughTau => "regular_through_tau",
            RegimeKind::CollapseAtTstar => "collapse_at_tstar",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime<T> {
    pub kind: RegimeKind,
    pub t_critical: Option<T>,
    /// `α` sits on the threshold `1/(2(1 - r0²))`.
    pub boundary: bool,
}

/// Right end of the validity interval: the first pole or zero of `r²`.
pub fn validity_end<T: Real>(p: &SelfSimilarParams<T>) -> T {
    let mut end = p.tau.min(p.alpha * p.tau);
    if let Some((lo, _)) = p.roots() {
        end = end.min(lo);
    }
    end
}

/// `r²(t) = (r0² - α/2)/((1 - t/τ)(1 - t/ατ)) + (α/2)(1 - t/ατ)/(1 - t/τ)`.
pub fn selfsimilar_r2<T: Real>(t: T, p: &SelfSimilarParams<T>) -> Result<T> {
    if t < T::zero() || t >= validity_end(p) {
        return Err(Error::Domain(format!("t = {t} lies outside the validity interval")));
    }
    let half = lit::<T>(0.5);
    let x = T::one() - t / p.tau;
    let y = T::one() - t / (p.alpha * p.tau);
    Ok((p.r0 * p.r0 - half * p.alpha) / (x * y) + half * p.alpha * y / x)
}

/// The factored form `(t² - 2ατt + 2ατ²r0²)/(2ατ²(1 - t/τ)(1 - t/ατ))`.
pub fn selfsimilar_r2_factored<T: Real>(t: T, p: &SelfSimilarParams<T>) -> Result<T> {
    if t < T::zero() || t >= validity_end(p) {
        return Err(Error::Domain(format!("t = {t} lies outside the validity interval")));
    }
    let at = p.alpha * p.tau;
    let two = lit::<T>(2.0);
    let num = t * t - two * at * t + two * at * p.tau * p.r0 * p.r0;
    Ok(num / (two * at * p.tau * (T::one() - t / p.tau) * (T::one() - t / at)))
}

pub fn classify_regime<T: Real>(p: &SelfSimilarParams<T>) -> Regime<T> {
    let threshold = p.collapse_threshold();
    if threshold > T::one() && (p.alpha - threshold).abs() <= lit::<T>(1e-12) * threshold {
        return Regime { kind: RegimeKind::RegularThroughTau, t_critical: Some(p.tau), boundary: true };
    }
    let at = p.alpha * p.tau;
    if let Some((t_star, _)) = p.roots() {
        if t_star < p.tau.min(at) {
            return Regime { kind: RegimeKind::CollapseAtTstar, t_critical: Some(t_star), boundary: false };
        }
    }
    if p.alpha <= T::one() {
        Regime { kind: RegimeKind::BlowupAtAlphaTau, t_critical: Some(at), boundary: false }
    } else {
        Regime { kind: RegimeKind::RegularThroughTau, t_critical: None, boundary: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarSample<T> {
    pub t: T,
    pub r: T,
    pub beta: T,
    pub gamma: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfSimilarRun<T> {
    pub samples: Vec<SelfSimilarSample<T>>,
    /// Collapse (`r → 0`) or blow-up (`r → ∞`) with the extrapolated time.
    pub event: Option<Event<T>>,
}

fn u_rate<T: Real>(p: &SelfSimilarParams<T>, t: T, u: T) -> T {
    let at = p.alpha * p.tau;
    u / (at - t) - (T::one() - u) / (p.tau - t)
}

fn beta_rate<T: Real>(p: &SelfSimilarParams<T>, t: T, u: T) -> T {
    p.a * p.tau * (T::one() - u) / (u * (p.tau - t))
}

/// RK4 for `u = r²` and `β` with `β(0) = 0`, stepping no further than a
/// tenth of the distance to `τ`, `ατ` or the extrapolated zero/pole of `u`.
/// Integration stops at `t_end`, or once `u < 1e-10` or `u > 1e10`.
pub fn selfsimilar_ode_solve<T: Real>(p: &SelfSimilarParams<T>, t_end: T, dt: T) -> Result<SelfSimilarRun<T>> {
    if !(dt > T::zero()) {
        return usage("dt must be positive");
    }
    let at = p.alpha * p.tau;
    let tenth = lit::<T>(0.1);
    let mut t = T::zero();
    let mut y = [p.r0 * p.r0, T::zero()];
    let sample = |t: T, y: &[T; 2]| SelfSimilarSample { t, r: y[0].sqrt(), beta: y[1], gamma: p.gamma(t) };
    let mut samples = vec![sample(t, &y)];
    let lo = lit::<T>(1e-10);
    let hi = lit::<T>(1e10);
    let mut guard = 0usize;
    while t < t_end {
        let u = y[0];
        let du = u_rate(p, t, u);
        if u < lo || u > hi {
            let kind = if u < lo { EventKind::Collapse } else { EventKind::BlowUp };
            let time = t + u / du.abs();
            return Ok(SelfSimilarRun {
                samples,
                event: Some(Event { kind, time, pair: None, sigma: None, value: u.sqrt() }),
            });
        }
        let mut h = dt.min(t_end - t).min(tenth * (p.tau - t)).min(tenth * (at - t).abs());
        if du != T::zero() {
            h = h.min(tenth * u / du.abs());
        }
        if !(h > T::zero()) {
            return Err(Error::StepFailure(format!("step underflow at t = {t}")));
        }
        y = rk4_step(&y, t, h, |s, y: &[T; 2]| Ok([u_rate(p, s, y[0]), beta_rate(p, s, y[0])]))?;
        t += h;
        samples.push(sample(t, &y));
        guard += 1;
        if guard > 50_000_000 {
            return Err(Error::NoConvergence("self-similar integration stalled".into()));
        }
    }
    Ok(SelfSimilarRun { samples, event: None })
}

/// `β(t) = ∫_0^t aτ(1 - r²)/(r²(τ - s)) ds` with the closed-form `r²`.
pub fn selfsimilar_beta<T: Real>(t: T, p: &SelfSimilarParams<T>) -> Result<T> {
    selfsimilar_r2(t, p)?;
    if t == T::zero() {
        return Ok(T::zero());
    }
    integrate_gl(
        |s: T| selfsimilar_r2(s, p).map(|u| beta_rate(p, s, u)).unwrap_or(T::nan()),
        T::zero(),
        t,
        64,
        10,
    )
}

/// Self-similar profile `Φ(t, σ)`.
pub fn selfsimilar_phi<T: Real>(t: T, sigma: T, p: &SelfSimilarParams<T>) -> Result<Complex<T>> {
    let r = selfsimilar_r2(t, p)?.sqrt();
    let beta = selfsimilar_beta(t, p)?;
    Ok(Complex::from_polar(r, beta + sigma * sigma / p.gamma(t)))
}

/// `Ψ_j(t, σ) = c + (X_j(t) - c)Φ(t, σ)` around the collapsing triangle.
pub fn triangle_filament_solution<T: Real>(
    grid: &Grid1D<T>,
    t: T,
    p: &SelfSimilarParams<T>,
) -> Result<FilamentField<T>> {
    let sol = ThreeVortexCollapse::<T>::new();
    let r = selfsimilar_r2(t, p)?.sqrt();
    let beta = selfsimilar_beta(t, p)?;
    let gamma = p.gamma(t);
    let mut state = sol.state(t)?;
    state.core = state.circulations.iter().map(|g| p.kappa0 / *g).collect();
    let phi = ComplexField::from_fn(grid, |s| Complex::from_polar(r, beta + s * s / gamma));
    let fields = state.positions.iter().map(|&x| phi.map(|z| sol.center + (x - sol.center) * z)).collect();
    FilamentField::absolute(grid.clone(), &state, BaseMotion::three_vortex(&sol), fields)
}
