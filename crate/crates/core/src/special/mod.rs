pub mod bessel;
pub mod gamma;
pub mod legendre;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.5772156649015329;
