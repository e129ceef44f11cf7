use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::pointvortex::dynamics::velocities;
use crate::pointvortex::PointVortexState;
use crate::scalar::{to_f64, Real};

/// How the co-rotating Jacobian is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JacobianMethod {
    /// Exact derivative of the Biot–Savart sums.
    #[default]
    Analytic,
    /// Central differences with step `1e-6` times the configuration radius.
    FiniteDifference,
}

struct Frame {
    x: Vec<Complex64>,
    g: Vec<f64>,
    omega: f64,
    centre: Complex64,
}

impl Frame {
    fn new<T: Real>(s: &PointVortexState<T>, omega: T) -> Self {
        let x: Vec<Complex64> = s.positions.iter().map(|z| Complex64::new(to_f64(z.re), to_f64(z.im))).collect();
        let g: Vec<f64> = s.circulations.iter().map(|&v| to_f64(v)).collect();
        let total: f64 = g.iter().sum();
        let centre = if total.abs() > 1e-12 * g.iter().map(|v| v.abs()).sum::<f64>() {
            x.iter().zip(&g).map(|(z, w)| z * w).sum::<Complex64>() / total
        } else {
            Complex64::new(0.0, 0.0)
        };
        Frame { x, g, omega: to_f64(omega), centre }
    }

    fn field(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let v = velocities(x, &self.g)?;
        Ok(v.into_iter()
            .zip(x)
            .map(|(v, z)| v - Complex64::new(0.0, self.omega) * (z - self.centre))
            .collect())
    }

    fn radius(&self) -> f64 {
        self.x.iter().map(|z| (z - self.centre).norm()).fold(0.0, f64::max).max(1e-300)
    }

    fn analytic(&self) -> DMatrix<f64> {
        let n = self.x.len();
        let mut jac = DMatrix::zeros(2 * n, 2 * n);
        let i = Complex64::new(0.0, 1.0);
        for col in 0..2 * n {
            let m = col / 2;
            let dz = if col % 2 == 0 { Complex64::new(1.0, 0.0) } else { i };
            for j in 0..n {
                let mut dv = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    let d = (self.x[j] - self.x[k]).conj();
                    let dd = (if j == m { dz } else { Complex64::new(0.0, 0.0) })
                        - (if k == m { dz } else { Complex64::new(0.0, 0.0) });
                    dv += -i * self.g[k] * dd.conj() / (d * d);
                }
                if j == m {
                    dv -= i * self.omega * dz;
                }
                jac[(2 * j, col)] = dv.re;
                jac[(2 * j + 1, col)] = dv.im;
            }
        }
        jac
    }

    fn finite_difference(&self) -> Result<DMatrix<f64>> {
        let n = self.x.len();
        let h = 1e-6 * self.radius();
        let mut jac = DMatrix::zeros(2 * n, 2 * n);
        for col in 0..2 * n {
            let dz = if col % 2 == 0 { Complex64::new(h, 0.0) } else { Complex64::new(0.0, h) };
            let mut plus = self.x.clone();
            let mut minus = self.x.clone();
            plus[col / 2] += dz;
            minus[col / 2] -= dz;
            let fp = self.field(&plus)?;
            let fm = self.field(&minus)?;
            for j in 0..n {
                let d = (fp[j] - fm[j]) / (2.0 * h);
                jac[(2 * j, col)] = d.re;
                jac[(2 * j + 1, col)] = d.im;
            }
        }
        Ok(jac)
    }
}

/// Jacobian of the co-rotating field `F(X) = Ẋ - iω(X - c)` in real coordinates `(x_1, y_1, ...)`.
pub fn pv_jacobian<T: Real>(state: &PointVortexState<T>, omega: T, method: JacobianMethod) -> Result<DMatrix<f64>> {
    let frame = Frame::new(state, omega);
    check_equilibrium(&frame)?;
    match method {
        JacobianMethod::Analytic => Ok(frame.analytic()),
        JacobianMethod::FiniteDifference => frame.finite_difference(),
    }
}

fn check_equilibrium(frame: &Frame) -> Result<()> {
    let f = frame.field(&frame.x)?;
    let speed = frame.g.iter().map(|v| v.abs()).sum::<f64>() / frame.radius();
    let residual = f.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if residual > 1e-8 * speed.max(1.0) {
        return Err(Error::NotAnEquilibrium { residual });
    }
    Ok(())
}

/// Eigenvalues of the co-rotating Jacobian, sorted by increasing real part.
pub fn pv_linear_spectrum<T: Real>(state: &PointVortexState<T>, omega: T) -> Result<Vec<Complex<f64>>> {
    pv_linear_spectrum_with(state, omega, JacobianMethod::default())
}

pub fn pv_linear_spectrum_with<T: Real>(
    state: &PointVortexState<T>,
    omega: T,
    method: JacobianMethod,
) -> Result<Vec<Complex<f64>>> {
    let jac = pv_jacobian(state, omega, method)?;
    let mut ev: Vec<Complex64> = jac.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(ev)
}
