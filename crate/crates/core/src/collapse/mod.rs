//! Collapse scenarios: Gaussian collapses around the stationary polygon,
//! the self-similar amplitude law for `|x|^{-p}` data, and self-similar
//! profiles around the collapsing triangle.

mod cw;
mod gaussian;
mod selfsim;

pub use cw::{cw_amplitude, CwAmplitude};
pub use gaussian::{
    gaussian_collapse, gaussian_collapse_field, shifted_collapse, stationary_polygon, BaseCollapse, GaussianTail,
    ShiftedCollapse,
};
pub use selfsim::{
    classify_regime, selfsimilar_beta, selfsimilar_ode_solve, selfsimilar_phi, selfsimilar_r2, selfsimilar_r2_factored,
    triangle_filament_solution, validity_end, Regime, RegimeKind, SelfSimilarParams, SelfSimilarRun, SelfSimilarSample,
};

#[cfg(test)]
mod tests;
