use num_complex::Complex;

use crate::error::{usage, Error, Result};
use crate::scalar::{is_finite_c, Real};

/// Positions, circulations and core coefficients of `N` point vortices.
#[derive(Debug, Clone, PartialEq)]
pub struct PointVortexState<T> {
    pub positions: Vec<Complex<T>>,
    pub circulations: Vec<T>,
    /// Filament core coefficients `α_j`; unused by the planar dynamics.
    pub core: Vec<T>,
    pub time: T,
}

impl<T: Real> PointVortexState<T> {
    pub fn new(positions: Vec<Complex<T>>, circulations: Vec<T>) -> Result<Self> {
        let n = positions.len();
        let core = vec![T::one(); n];
        Self::with_core(positions, circulations, core)
    }

    pub fn with_core(positions: Vec<Complex<T>>, circulations: Vec<T>, core: Vec<T>) -> Result<Self> {
        let n = positions.len();
        if n == 0 {
            return usage("at least one vortex is required");
        }
        if circulations.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: circulations.len() });
        }
        if core.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: core.len() });
        }
        if circulations.iter().any(|g| *g == T::zero() || !g.is_finite()) {
            return usage("circulations must be finite and non-zero");
        }
        if positions.iter().any(|&z| !is_finite_c(z)) {
            return usage("positions must be finite");
        }
        Ok(PointVortexState { positions, circulations, core, time: T::zero() })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn total_circulation(&self) -> T {
        self.circulations.iter().copied().sum()
    }

    /// Smallest pairwise distance and the pair attaining it.
    pub fn min_separation(&self) -> (T, Option<(usize, usize)>) {
        min_separation(&self.positions)
    }
}

pub(crate) fn min_separation<T: Real>(x: &[Complex<T>]) -> (T, Option<(usize, usize)>) {
    let mut best = (T::infinity(), None);
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            let d = (x[j] - x[k]).norm();
            if d < best.0 {
                best = (d, Some((j, k)));
            }
        }
    }
    best
}
