//! Point vortices, nearly-parallel vortex filaments, polygonal filament
//! configurations, collapse constructions and the binormal flow.
//!
//! Solvers are generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the common `f64` instantiations.

pub mod binormal;
pub mod collapse;
pub mod error;
pub mod events;
pub mod filaments;
pub mod numerics;
pub mod pointvortex;
pub mod polygonflow;
pub mod scalar;

pub use error::{Error, Result};
pub use events::{Event, EventKind};
pub use scalar::{lit, Real};

pub type Grid = numerics::Grid1D<f64>;
pub type Field = numerics::ComplexField<f64>;
pub type Grid32 = numerics::Grid1D<f32>;
pub type Field32 = numerics::ComplexField<f32>;
pub type VortexState = pointvortex::PointVortexState<f64>;
