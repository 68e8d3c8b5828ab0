//! Lowest zero-range eigenvalue for three identical bosons in three dimensions.
//!
//! sin(ν̃π/2)·x = −ν̃ cos(ν̃π/2) + (8/√3) sin(ν̃π/6), x = √2ρ/a, λ̃ = ν̃² − 4.
//! Dividing by ν̃ gives an entire function of w = ν̃², so real and
//! imaginary ν̃ are handled together.

use super::eigen::refine_root;
use crate::error::Result;
use std::f64::consts::PI;

/// sin(√w θ)/√w continued to w ≤ 0.
fn sinc_like(w: f64, theta: f64) -> f64 {
    if w > 1e-12 {
        let s = w.sqrt();
        (s * theta).sin() / s
    } else if w < -1e-12 {
        let s = (-w).sqrt();
        (s * theta).sinh() / s
    } else {
        theta * (1.0 - w * theta * theta / 6.0)
    }
}

fn cos_like(w: f64, theta: f64) -> f64 {
    if w >= 0.0 {
        (w.sqrt() * theta).cos()
    } else {
        ((-w).sqrt() * theta).cosh()
    }
}

/// Condition divided by ν̃, as a function of w = ν̃².
pub fn efimov_residual(w: f64, x: f64) -> f64 {
    x * sinc_like(w, PI / 2.0) + cos_like(w, PI / 2.0) - 8.0 / 3f64.sqrt() * sinc_like(w, PI / 6.0)
}

/// Lowest λ̃ = ν̃² − 4 at ρ/a; ρ/a = ∞ gives ν̃ = 2 and λ̃ = 0.
pub fn efimov3d_lowest(rho_over_a: f64) -> Result<f64> {
    if rho_over_a.is_infinite() {
        return Ok(0.0);
    }
    let x = 2f64.sqrt() * rho_over_a.max(0.0);
    let (w_lo, w_hi) = (-4.0, 4.0);
    let steps = 800;
    let mut prev = efimov_residual(w_lo, x);
    for i in 1..=steps {
        let w = w_lo + (w_hi - w_lo) * i as f64 / steps as f64;
        let cur = efimov_residual(w, x);
        if cur == 0.0 {
            return Ok(w - 4.0);
        }
        if cur.signum() != prev.signum() {
            let wp = w - (w_hi - w_lo) / steps as f64;
            let root = refine_root(|w| efimov_residual(w, x), wp, w, 1e-15)?;
            return Ok(root - 4.0);
        }
        prev = cur;
    }
    // the root sits just below w = 4 for very large x
    Ok(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_limit() {
        let l = efimov3d_lowest(0.0).unwrap();
        assert!((l + 5.0125).abs() < 1e-3, "{l}");
        // s₀ = 1.00624 for identical bosons
        let s0 = (-(l + 4.0)).sqrt();
        assert!((s0 - 1.006237).abs() < 1e-5, "{s0}");
    }

    #[test]
    fn large_distance_limit() {
        assert_eq!(efimov3d_lowest(f64::INFINITY).unwrap(), 0.0);
        let l = efimov3d_lowest(1e6).unwrap();
        assert!(l < 0.0 && l > -1e-4, "{l}");
    }

    #[test]
    fn monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let r = 10f64.powf(-3.0 + 6.0 * i as f64 / 199.0);
            let l = efimov3d_lowest(r).unwrap();
            assert!(l > prev);
            prev = l;
        }
    }
}
