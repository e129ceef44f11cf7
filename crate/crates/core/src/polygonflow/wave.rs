use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::filaments::{BaseMotion, FilamentField};
use crate::numerics::{find_root, rk4_step, ComplexField, Grid1D};
use crate::pointvortex::polygon_equilibrium;
use crate::scalar::{count, lit, Real};

/// `(η - 1)ln(1 - η) - η + η²/2`, summed as a series for small `η` to avoid cancellation.
fn log_remainder<T: Real>(eta: T) -> T {
    if eta < lit(0.25) {
        let mut term = eta * eta;
        let mut sum = T::zero();
        for n in 3..64 {
            term *= eta;
            let n = count::<T>(n);
            sum -= term / (n * (n - T::one()));
        }
        sum
    } else {
        (eta - T::one()) * (-eta).ln_1p() - eta + eta * eta / lit(2.0)
    }
}

/// `B(η) = -(c² - 4ω)η² + 4ω((η - 1)ln(1 - η) - η)`, so that `η'² = B(η)`.
pub fn profile_bracket<T: Real>(c: T, omega: T, eta: T) -> T {
    (lit::<T>(2.0) * omega - c * c) * eta * eta + lit::<T>(4.0) * omega * log_remainder(eta)
}

fn reduced_bracket<T: Real>(c: T, omega: T, eta: T) -> T {
    let gap = lit::<T>(2.0) * omega - c * c;
    if eta < lit(0.25) {
        let mut term = T::one();
        let mut sum = T::zero();
        for n in 3..64 {
            term *= eta;
            let n = count::<T>(n);
            sum += term / (n * (n - T::one()));
        }
        gap - lit::<T>(4.0) * omega * sum
    } else {
        profile_bracket(c, omega, eta) / (eta * eta)
    }
}

fn bracket_slope<T: Real>(c: T, omega: T, eta: T) -> T {
    let four = lit::<T>(4.0);
    -lit::<T>(2.0) * (c * c - four * omega) * eta + four * omega * (-eta).ln_1p()
}

/// Subsonic traveling wave `Φ(t, σ) = v(σ + ct)` of the polygon equation.
///
/// The modulus dip `η = 1 - |v|²` is tabulated on `σ ≥ 0` and extended by
/// evenness; the phase `θ` is odd with `θ' = cη/(2(1 - η))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TravelingWave<T> {
    pub c: T,
    pub omega: T,
    pub eta_max: T,
    pub theta_plus: T,
    pub theta_minus: T,
    /// Decay rate `√(2ω - c²)` of the tail.
    pub decay: T,
    step: T,
    eta: Vec<T>,
    deta: Vec<T>,
    theta: Vec<T>,
}

const TABLE_STEP: f64 = 1.0 / 512.0;

/// Integrates the profile ODE from the turning point `η(0) = η_max`.
///
/// Near the turning point the second-order form `η'' = B'(η)/2` is used;
/// once `η < η_max/2` the integration switches to the stable first-order
/// branch `η' = -√B(η)`.
pub fn traveling_wave<T: Real>(c: T, omega: T) -> Result<TravelingWave<T>> {
    if !(omega > T::zero()) {
        return usage("traveling waves need ω > 0");
    }
    if !(c > T::zero()) {
        return usage("traveling waves need c > 0");
    }
    let sonic = lit::<T>(2.0) * omega;
    let gap = sonic - c * c;
    if gap.abs() <= lit::<T>(1e-12) * sonic {
        return Ok(TravelingWave {
            c,
            omega,
            eta_max: T::zero(),
            theta_plus: T::zero(),
            theta_minus: T::zero(),
            decay: T::zero(),
            step: lit(TABLE_STEP),
            eta: vec![T::zero()],
            deta: vec![T::zero()],
            theta: vec![T::zero()],
        });
    }
    if gap < T::zero() {
        return Err(Error::Inadmissible(format!("no subsonic wave: c² = {} exceeds 2ω = {}", c * c, sonic)));
    }
    let g = |eta: T| reduced_bracket(c, omega, eta);
    let lo = lit::<T>(1e-6).min(gap / (lit::<T>(10.0) * omega));
    let hi = lit::<T>(0.5);
    if !(g(lo) > T::zero()) || !(g(hi) < T::zero()) {
        return Err(Error::Inadmissible(format!("no profile root below 1/2 for c = {c}, ω = {omega}")));
    }
    let eta_max = find_root(g, lo, hi, lit(1e-15))?;
    let decay = gap.sqrt();
    let h: T = lit(TABLE_STEP);
    let theta_rate = |eta: T| c * eta / (lit::<T>(2.0) * (T::one() - eta));
    let mut eta = vec![eta_max];
    let mut deta = vec![T::zero()];
    let mut theta = vec![T::zero()];
    let mut state = [eta_max, T::zero(), T::zero()];
    let second = |_: T, y: &[T; 3]| Ok([y[1], bracket_slope(c, omega, y[0]) / lit(2.0), theta_rate(y[0])]);
    while state[0] > eta_max / lit(2.0) {
        state = rk4_step(&state, T::zero(), h, second)?;
        eta.push(state[0]);
        deta.push(state[1]);
        theta.push(state[2]);
        if eta.len() > 10_000_000 {
            return Err(Error::NoConvergence("profile did not leave the turning point".into()));
        }
    }
    let first = |_: T, y: &[T; 2]| {
        let b = profile_bracket(c, omega, y[0]).max(T::zero());
        Ok([-b.sqrt(), theta_rate(y[0])])
    };
    let mut s = [state[0], state[2]];
    let floor = lit::<T>(1e-14) * eta_max;
    while s[0] > floor {
        s = rk4_step(&s, T::zero(), h, first)?;
        let b = profile_bracket(c, omega, s[0]).max(T::zero());
        eta.push(s[0]);
        deta.push(-b.sqrt());
        theta.push(s[1]);
        if eta.len() > 50_000_000 {
            return Err(Error::NoConvergence("profile tail did not decay".into()));
        }
    }
    let tail = c * s[0] / (lit::<T>(2.0) * decay);
    let theta_inf = s[1] + tail;
    Ok(TravelingWave {
        c,
        omega,
        eta_max,
        theta_plus: theta_inf,
        theta_minus: -theta_inf,
        decay,
        step: h,
        eta,
        deta,
        theta,
    })
}

fn hermite<T: Real>(y0: T, d0: T, y1: T, d1: T, h: T, s: T) -> (T, T) {
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = two * s3 - three * s2 + T::one();
    let h10 = s3 - two * s2 + s;
    let h01 = -two * s3 + three * s2;
    let h11 = s3 - s2;
    let v = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    let dh00 = lit::<T>(6.0) * (s2 - s);
    let dh10 = three * s2 - lit::<T>(4.0) * s + T::one();
    let dh11 = three * s2 - two * s;
    let dv = (dh00 * y0 + dh10 * h * d0 - dh00 * y1 + dh11 * h * d1) / h;
    (v, dv)
}

impl<T: Real> TravelingWave<T> {
    pub fn phase_jump(&self) -> T {
        self.theta_plus - self.theta_minus
    }

    /// Extent of the tabulated half-line.
    pub fn table_length(&self) -> T {
        self.step * count(self.eta.len() - 1)
    }

    fn theta_rate(&self, eta: T) -> T {
        self.c * eta / (lit::<T>(2.0) * (T::one() - eta))
    }

    /// `(η, η', θ, θ')` at `σ ≥ 0`.
    fn half_line(&self, sigma: T) -> (T, T, T, T) {
        let n = self.eta.len() - 1;
        let x = sigma / self.step;
        let k = x.floor().to_usize().unwrap_or(usize::MAX);
        if n == 0 || k >= n {
            if self.decay == T::zero() {
                return (T::zero(), T::zero(), self.theta_plus, T::zero());
            }
            let e = self.eta[n] * (-self.decay * (sigma - self.table_length())).exp();
            let th = self.theta_plus - self.c * e / (lit::<T>(2.0) * self.decay);
            return (e, -self.decay * e, th, self.theta_rate(e));
        }
        let s = x - count(k);
        let (e, de) = hermite(self.eta[k], self.deta[k], self.eta[k + 1], self.deta[k + 1], self.step, s);
        let (t0, t1) = (self.theta_rate(self.eta[k]), self.theta_rate(self.eta[k + 1]));
        let (th, _) = hermite(self.theta[k], t0, self.theta[k + 1], t1, self.step, s);
        (e, de, th, self.theta_rate(e))
    }

    /// `η(σ) = 1 - |v(σ)|²`.
    pub fn eta(&self, sigma: T) -> T {
        self.half_line(sigma.abs()).0
    }

    /// `η'(σ)`; odd in `σ`.
    pub fn eta_prime(&self, sigma: T) -> T {
        let d = self.half_line(sigma.abs()).1;
        if sigma < T::zero() { -d } else { d }
    }

    /// Phase `θ(σ)`; odd in `σ`.
    pub fn theta(&self, sigma: T) -> T {
        let t = self.half_line(sigma.abs()).2;
        if sigma < T::zero() { -t } else { t }
    }

    /// `v(σ) = √(1 - η) e^{iθ}`.
    pub fn v(&self, sigma: T) -> Complex<T> {
        let (e, _, th, _) = self.half_line(sigma.abs());
        let th = if sigma < T::zero() { -th } else { th };
        Complex::from_polar((T::one() - e).sqrt(), th)
    }

    /// `v'(σ) = (ρ' + iρθ') e^{iθ}` with `ρ = √(1 - η)`.
    pub fn v_prime(&self, sigma: T) -> Complex<T> {
        let (e, de, th, dth) = self.half_line(sigma.abs());
        let (de, th) = if sigma < T::zero() { (-de, -th) } else { (de, th) };
        let rho = (T::one() - e).sqrt();
        Complex::new(-de / (lit::<T>(2.0) * rho), rho * dth) * Complex::from_polar(T::one(), th)
    }

    /// `(η, v)` sampled at `σ + shift` on the grid nodes.
    pub fn sample(&self, grid: &Grid1D<T>, shift: T) -> (Vec<T>, ComplexField<T>) {
        let nodes = grid.nodes();
        let eta = nodes.iter().map(|&s| self.eta(s + shift)).collect();
        let v = ComplexField::new(nodes.iter().map(|&s| self.v(s + shift)).collect());
        (eta, v)
    }
}

/// Twisted `N`-helix built from a traveling wave.
#[derive(Debug, Clone, PartialEq)]
pub struct HelixFamily<T> {
    pub wave: TravelingWave<T>,
    pub n: usize,
    /// Polygon radius with `(N - 1)/(2R²) = ω`.
    pub radius: T,
    /// Boost `√ω`.
    pub nu: T,
}

/// `Ψ_j(t, σ) = R e^{i√ω σ + 2πij/N} v(σ + t(c - 2√ω))` for the unit-circulation polygon.
pub fn helix_transform<T: Real>(wave: &TravelingWave<T>, n: usize) -> Result<HelixFamily<T>> {
    if n < 2 {
        return usage("a helix needs at least two filaments");
    }
    let radius = (count::<T>(n - 1) / (lit::<T>(2.0) * wave.omega)).sqrt();
    Ok(HelixFamily { wave: wave.clone(), n, radius, nu: wave.omega.sqrt() })
}

impl<T: Real> HelixFamily<T> {
    /// Speed at which the modulus profile translates.
    pub fn speed(&self) -> T {
        self.wave.c - lit::<T>(2.0) * self.nu
    }

    fn prefactor(&self, j: usize, sigma: T) -> Complex<T> {
        Complex::from_polar(self.radius, self.nu * sigma + T::TAU() * count(j) / count(self.n))
    }

    pub fn value(&self, j: usize, t: T, sigma: T) -> Complex<T> {
        self.prefactor(j, sigma) * self.wave.v(sigma + t * self.speed())
    }

    /// Absolute filament fields at time `t`, with the rotating polygon as base.
    pub fn fields(&self, grid: &Grid1D<T>, t: T) -> Result<FilamentField<T>> {
        let (mut state, omega) = polygon_equilibrium(self.n, T::one(), self.radius, None)?;
        let base = BaseMotion::rotating(state.positions.clone(), Complex::new(T::zero(), T::zero()), omega);
        state.time = t;
        let nodes = grid.nodes();
        let fields = (0..self.n)
            .map(|j| ComplexField::new(nodes.iter().map(|&s| self.value(j, t, s)).collect()))
            .collect();
        FilamentField::absolute(grid.clone(), &state, base, fields)
    }
}
