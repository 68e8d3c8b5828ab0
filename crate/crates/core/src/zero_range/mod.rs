//! Analytic large-distance machinery for contact interactions.

pub mod angular;
pub mod efimov;
pub mod eigen;
pub mod profile;

pub use angular::{free_angular_solution, q11_zero_range, small_alpha_expansion};
pub use efimov::efimov3d_lowest;
pub use eigen::{eig18_residual, solve_lambda_zero_range, NuBranch};
pub use profile::{k0_channel_profile, q11_from_profile};
