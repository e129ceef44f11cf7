//! Grids, spectral operators, time steppers, quadrature and root finding.

mod fd;
mod field;
mod grid;
mod quad;
mod roots;
mod stepper;

pub use fd::{fd_d1, fd_d1_order, fd_d2, fd_d2_order, fd_weights, FD_HALF_WIDTH};
pub use field::{spectral_d1, spectral_d2, ComplexField};
pub use grid::Grid1D;
pub use quad::{cumulative_trapezoid, gauss_legendre, integrate_gl, quad_trapezoid};
pub use roots::find_root;
pub use stepper::{rk4_step, split_step, strang_step, OdeState};

#[cfg(test)]
mod tests;
