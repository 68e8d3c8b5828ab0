//! The bound-pair channel function at large ρ: a K₀ profile in α.

use crate::quad::gauss_legendre;
use crate::special::bessel::{k0, k0_scaled, k1_scaled};
use serde::Serialize;

/// φ(α) = 2kρ·K₀(√2 kρα), normalized so that ∫₀^∞ φ² α dα = 1.
pub fn k0_channel_profile(k: f64, rho: f64, alpha: f64) -> f64 {
    2.0 * k * rho * k0(2f64.sqrt() * k * rho * alpha)
}

/// Panel quadrature on t ∈ (0, 60], refined toward t = 0.
fn t_rule() -> (Vec<f64>, Vec<f64>) {
    let mut edges = vec![0.0];
    for i in 0..30 {
        edges.push(1e-12 * 1e12f64.powf(i as f64 / 29.0));
    }
    for i in 1..=59 {
        edges.push(1.0 + i as f64);
    }
    let (mut x, mut w) = (Vec::new(), Vec::new());
    for e in edges.windows(2) {
        let (xi, wi) = gauss_legendre(16, e[0], e[1]);
        x.extend(xi);
        w.extend(wi);
    }
    (x, w)
}

/// Numerical ∫ φ² α dα over the profile.
pub fn profile_norm(k: f64, rho: f64) -> f64 {
    let c = 2f64.sqrt() * k * rho;
    let (t, w) = t_rule();
    t.iter()
        .zip(&w)
        .map(|(&t, &w)| {
            let a = t / c;
            let f = k0_channel_profile(k, rho, a);
            w * f * f * a / c
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileQ11 {
    pub q11: f64,
    /// kρ below 5: the profile does not describe the channel there.
    pub regime_warning: bool,
}

/// Q₁₁ = ∫ φ ∂²φ/∂ρ² α dα for the K₀ profile, with the ρ-derivative taken
/// analytically: ∂²φ/∂ρ² = 2k[c²ρK₀(cρ) − cK₁(cρ)], c = √2kα.
pub fn q11_from_profile(k: f64, rho: f64) -> ProfileQ11 {
    let c_of = |a: f64| 2f64.sqrt() * k * a;
    let scale = 2f64.sqrt() * k * rho;
    let (t, w) = t_rule();
    let mut q = 0.0;
    for (&t, &w) in t.iter().zip(&w) {
        let a = t / scale;
        let c = c_of(a);
        // K₀, K₁ at cρ = t, with the common e^{−t} factor applied once
        let e = (-t).exp();
        let (kk0, kk1) = (k0_scaled(t) * e, k1_scaled(t) * e);
        let phi = 2.0 * k * rho * kk0;
        let d2 = 2.0 * k * (c * c * rho * kk0 - c * kk1);
        q += w / scale * phi * d2 * a;
    }
    ProfileQ11 {
        q11: q,
        regime_warning: k * rho < 5.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized() {
        for (k, rho) in [(1.0, 5.0), (0.3, 40.0)] {
            assert!((profile_norm(k, rho) - 1.0).abs() < 1e-10);
        }
        assert!(k0_channel_profile(1.0, 5.0, 100.0) < 1e-200);
    }

    #[test]
    fn q11_law() {
        let q = q11_from_profile(1.0, 50.0);
        assert!(!q.regime_warning);
        assert!((q.q11 * 2500.0 + 1.0 / 3.0).abs() < 1e-9);
        let q2 = q11_from_profile(1.0, 100.0).q11;
        assert!((q2 / q.q11 - 0.25).abs() < 1e-9);
        let q3 = q11_from_profile(3.0, 50.0).q11;
        assert!((q3 - q.q11).abs() < 1e-12);
        assert!(q11_from_profile(0.1, 10.0).regime_warning);
    }
}
