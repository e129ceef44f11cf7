//! Nearly-parallel vortex filaments: the coupled Schrödinger system, its
//! perturbation form, renormalised energies, symmetries and pair waves.

mod energy;
mod evolve;
mod field;
mod pair;
mod rhs;
mod symmetry;

pub use energy::{
    convexity_violations, hexagon_energy, renormalized_quantities, segment_energy, separation_detail, separation_stats, square_energy,
    RenormalizedQuantities, SeparationDetail,
};
pub use evolve::{kmd_evolve, kmd_evolve_observed, kmd_step, FilamentSample, KmdOptions, KmdRun};
pub(crate) use evolve::parabola_vertex;
pub use field::{BaseMotion, FilamentField, Representation};
pub use pair::{pair_wave_solution, PairWave};
pub use rhs::{kmd_rhs, kmd_rhs_fd};
pub use symmetry::{galilean_boost, parallelogram_perturbation, Boosted};
