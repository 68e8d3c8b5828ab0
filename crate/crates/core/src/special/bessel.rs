//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Evaluated from K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt with the
//! trapezoidal rule, which converges geometrically for this integrand.

const STEP: f64 = 0.05;

fn scaled_integral(order: f64, x: f64) -> f64 {
    // exp(x) K_ν(x) = ∫ exp(−x (cosh t − 1)) cosh(νt) dt
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * STEP;
        let e = x * (t.cosh() - 1.0);
        if e > 745.0 {
            break;
        }
        let term = (-e).exp() * (order * t).cosh();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    sum * STEP
}

/// exp(x)·K₀(x), finite for large x.
pub fn k0_scaled(x: f64) -> f64 {
    assert!(x > 0.0, "K0 requires x > 0");
    scaled_integral(0.0, x)
}

/// exp(x)·K₁(x).
pub fn k1_scaled(x: f64) -> f64 {
    assert!(x > 0.0, "K1 requires x > 0");
    scaled_integral(1.0, x)
}

pub fn k0(x: f64) -> f64 {
    if x > 700.0 {
        return 0.0;
    }
    k0_scaled(x) * (-x).exp()
}

pub fn k1(x: f64) -> f64 {
    if x > 700.0 {
        return 0.0;
    }
    k1_scaled(x) * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;

    #[test]
    fn reference_values() {
        // Abramowitz & Stegun table 9.8
        assert!((k0(1.0) - 0.42102443824070833).abs() < 1e-15);
        assert!((k1(1.0) - 0.6019072301972346).abs() < 1e-15);
        assert!((k0(0.1) - 2.4270690247020166).abs() < 1e-14);
        assert!((k0_scaled(50.0) - 0.17680715585742934).abs() < 1e-14);
    }

    #[test]
    fn small_argument_log() {
        let x: f64 = 1e-6;
        let approx = -(x / 2.0).ln() - EULER_GAMMA;
        assert!((k0(x) - approx).abs() < 1e-10);
        assert!((k1(x) * x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn wronskian_like_identity() {
        // K0' = -K1 checked by central differences
        for &x in &[0.3, 2.0, 9.0] {
            let h = 1e-5;
            let d = (k0(x + h) - k0(x - h)) / (2.0 * h);
            assert!((d + k1(x)).abs() < 1e-8 * k1(x).max(1.0));
        }
    }
}
