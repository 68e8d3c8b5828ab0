//! Three identical bosons in two dimensions.
//!
//! The hyperangular Faddeev equation is solved at fixed hyperradius ρ,
//! its eigenvalues and couplings are tabulated along ρ, and the coupled
//! hyperradial equations give the three-body levels. Units are ħ = m = 1.

pub mod angular;
pub mod channels;
pub mod error;
pub mod interp;
pub mod numerov;
pub mod potential;
pub mod quad;
pub mod special;
pub mod survey;
pub mod twobody;
pub mod zero_range;

pub use error::{Error, Result};
pub use potential::PotentialSpec;
