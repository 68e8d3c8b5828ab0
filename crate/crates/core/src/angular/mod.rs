//! Hyperangular Faddeev problem for finite-range potentials.

pub mod coords;
pub mod grid;
pub mod solve;

pub use coords::{hyperspherical_from_jacobi, kernel_average, rotated_angle};
pub use grid::{AngularGrid, DEFAULT_BETA, DEFAULT_NODES};
pub use solve::{solve_angular, AngularSpectrum, SPURIOUS_LAMBDA};
