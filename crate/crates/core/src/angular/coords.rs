//! Jacobi and hyperspherical coordinates, and the kinematic rotation.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// (ρ, α) from the pair distance r_jk and the spectator distance r_i,jk
/// (measured from the pair's centre of mass).
pub fn hyperspherical_from_jacobi(r_jk: f64, r_i_jk: f64) -> Result<(f64, f64)> {
    if !(r_jk >= 0.0 && r_i_jk >= 0.0) || !r_jk.is_finite() || !r_i_jk.is_finite() {
        return Err(Error::Domain(format!(
            "distances must be finite and non-negative, got {r_jk}, {r_i_jk}"
        )));
    }
    if r_jk == 0.0 && r_i_jk == 0.0 {
        return Err(Error::Domain(
            "hyperangle undefined when all particles coincide".into(),
        ));
    }
    let x = r_jk / 2f64.sqrt();
    let y = r_i_jk * (2.0f64 / 3.0).sqrt();
    Ok((x.hypot(y), x.atan2(y)))
}

/// α′ in the rotated Jacobi set:
/// sin²α′ = ¼ sin²α + ¾ cos²α + sign·(√3/2) sin α cos α cos β.
pub fn rotated_angle(alpha: f64, beta: f64, sign: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let s2 = 0.25 * s * s + 0.75 * c * c + sign.signum() * 0.75f64.sqrt() * s * c * beta.cos();
    s2.clamp(0.0, 1.0).sqrt().asin().clamp(0.0, FRAC_PI_2)
}

/// Smallest β-quadrature size accepted.
pub const MIN_BETA_POINTS: usize = 8;

/// (1/2π)∫ φ(α′(α, β)) dβ by the M-point periodic trapezoid rule.
pub fn kernel_average(phi: impl Fn(f64) -> f64, alpha: f64, m: usize, sign: f64) -> Result<f64> {
    if m < MIN_BETA_POINTS {
        return Err(Error::Config(format!(
            "beta quadrature needs at least {MIN_BETA_POINTS} points, got {m}"
        )));
    }
    let s: f64 = (0..m)
        .map(|k| phi(rotated_angle(alpha, 2.0 * PI * k as f64 / m as f64, sign)))
        .sum();
    Ok(s / m as f64)
}
