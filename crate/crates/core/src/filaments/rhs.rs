use num_complex::Complex;

use crate::error::{Error, Result};
use crate::filaments::{FilamentField, Representation};
use crate::numerics::{fd_d2, ComplexField};
use crate::scalar::{is_finite_c, Real};

/// Interaction terms `Σ_{k≠j} Γ_k (...)` for every filament.
///
/// In perturbation form the renormalised difference is evaluated as
/// `-conj(u_j - u_k) / (conj(w) conj(D))`, which avoids cancellation.
pub(crate) fn interaction<T: Real>(
    fields: &[ComplexField<T>],
    x: &[Complex<T>],
    g: &[T],
    rep: Representation,
) -> Result<Vec<ComplexField<T>>> {
    let n = fields.len();
    let m = fields.first().map_or(0, |f| f.len());
    let mut out = vec![ComplexField::zeros(m); n];
    for j in 0..n {
        for k in j + 1..n {
            let d = x[j] - x[k];
            let dc = d.conj();
            for i in 0..m {
                let (a, b) = match rep {
                    Representation::Absolute => {
                        let w = fields[j][i] - fields[k][i];
                        if w.norm_sqr() == T::zero() {
                            return Err(Error::SingularPotential { j, k, index: i });
                        }
                        let inv = w.conj().inv();
                        (inv * g[k], -inv * g[j])
                    }
                    Representation::Perturbation => {
                        let delta = fields[j][i] - fields[k][i];
                        let w = d + delta;
                        if w.norm_sqr() == T::zero() || dc.norm_sqr() == T::zero() {
                            return Err(Error::SingularPotential { j, k, index: i });
                        }
                        let q = -delta.conj() / (w.conj() * dc);
                        (q * g[k], -q * g[j])
                    }
                };
                if !(is_finite_c(a) && is_finite_c(b)) {
                    return Err(Error::SingularPotential { j, k, index: i });
                }
                out[j][i] = out[j][i] + a;
                out[k][i] = out[k][i] + b;
            }
        }
    }
    Ok(out)
}

fn assemble<T: Real>(
    f: &FilamentField<T>,
    d2: impl Fn(&ComplexField<T>) -> Result<Vec<Complex<T>>>,
) -> Result<Vec<ComplexField<T>>> {
    let pot = interaction(&f.fields, &f.base_positions, &f.circulations, f.representation)?;
    let i = Complex::new(T::zero(), T::one());
    f.fields
        .iter()
        .zip(pot)
        .zip(f.dispersion())
        .map(|((u, p), kappa)| {
            let lap = d2(u)?;
            Ok(ComplexField::new(lap.iter().zip(p.iter()).map(|(l, q)| i * (*l * kappa + *q)).collect()))
        })
        .collect()
}

/// Time derivatives `∂_t u_j = i[α_jΓ_j u_j'' + Σ_{k≠j} Γ_k(...)]` with spectral `∂_σ²`.
pub fn kmd_rhs<T: Real>(f: &FilamentField<T>) -> Result<Vec<ComplexField<T>>> {
    assemble(f, |u| f.grid.d2(u))
}

/// As [`kmd_rhs`] with eighth-order finite differences, for non-periodic data.
///
/// The four nodes nearest each end use lower-order stencils.
pub fn kmd_rhs_fd<T: Real>(f: &FilamentField<T>) -> Result<Vec<ComplexField<T>>> {
    let h = f.grid.spacing();
    assemble(f, |u| Ok(fd_d2(u, h)))
}
