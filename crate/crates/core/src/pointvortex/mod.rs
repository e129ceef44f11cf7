//! Planar point-vortex dynamics.

mod dynamics;
mod equilibria;
mod integrate;
mod stability;
mod state;

pub use dynamics::{
    collapse_check, collapse_check_with_tol, pv_invariants, pv_rhs, velocities, CollapseCertificate, PvInvariants,
};
pub use equilibria::{polygon_equilibrium, three_vortex_solution, ThreeVortexCollapse};
pub use integrate::{pv_integrate, pv_integrate_with, InvariantDrift, PvOptions, PvSample, PvTrajectory};
pub use stability::{pv_jacobian, pv_linear_spectrum, pv_linear_spectrum_with, JacobianMethod};
pub use state::PointVortexState;

#[cfg(test)]
mod tests;
