//! Single filaments under the binormal flow: Frenet integration, the
//! filament function, a tangent-based stepper and the self-similar family.

mod align;
mod curve;
mod flow;
mod frenet;
mod hasimoto;
mod selfsim;
pub mod vec3;

pub use align::{rigid_fit, RigidFit};
pub use curve::Curve3D;
pub use flow::{bf_evolve, bf_step, BfRun, BfSample};
pub use frenet::{corner_angle, frenet_integrate, CornerAngle, FrameInit};
pub use hasimoto::{hasimoto, parallel_transport, FilamentFunction, HasimotoBranch, MIN_CURVATURE};
pub use selfsim::{corner_position, corner_sin_half, selfsimilar_filament, selfsimilar_profile};
