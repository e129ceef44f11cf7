//! Polygonal filament configurations `Ψ_j = X_j Φ`: the profile equation,
//! its energies, traveling waves and twisted helices.

mod evolve;
mod profile;
mod wave;

pub use evolve::{bm_evolve, bm_step, BmOptions, BmRun, BmSample};
pub use profile::{bm_energy, bm_rhs, bm_rhs_fd, PolygonProfile};
pub use wave::{helix_transform, profile_bracket, traveling_wave, HelixFamily, TravelingWave};

#[cfg(test)]
mod tests;
