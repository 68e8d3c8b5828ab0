use num_complex::Complex64;
use std::f64::consts::PI;

// B_{2n} / (2n) for the asymptotic digamma series.
const ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

const SHIFT_TO: f64 = 10.0;

/// Digamma function ψ(x) for real arguments.
///
/// Poles at non-positive integers return `NaN`.
pub fn digamma(x: f64) -> f64 {
    if x <= 0.0 {
        if x == x.floor() {
            return f64::NAN;
        }
        // ψ(x) = ψ(1 - x) - π cot(πx)
        return digamma(1.0 - x) - PI / (PI * x).tan();
    }
    let mut acc = 0.0;
    let mut x = x;
    while x < SHIFT_TO {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    acc + x.ln() - 0.5 / x - series
}

/// Digamma function ψ(z) for complex arguments.
pub fn digamma_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(digamma(z.re), 0.0);
    }
    if z.re < 0.5 {
        // ψ(z) = ψ(1 - z) - π cot(πz)
        let pz = z * PI;
        return digamma_complex(Complex64::new(1.0, 0.0) - z) - PI * pz.cos() / pz.sin();
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut z = z;
    while z.norm() < SHIFT_TO {
        acc -= z.inv();
        z += 1.0;
    }
    let inv2 = (z * z).inv();
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for c in ASYMPTOTIC {
        series += pow * c;
        pow *= inv2;
    }
    acc + z.ln() - z.inv() * 0.5 - series
}

/// Re ψ(1/2 + iτ), the combination that appears on the conical branch.
pub fn digamma_half_plus_i(tau: f64) -> f64 {
    digamma_complex(Complex64::new(0.5, tau)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;

    #[test]
    fn known_values() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(x+1) = ψ(x) + 1/x
        for &x in &[0.3, 1.7, 4.2, 13.0] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-13);
        }
        assert!(digamma(-2.0).is_nan());
        assert!((digamma(-0.5) - (digamma(1.5) - PI / (-0.5 * PI).tan())).abs() < 1e-13);
    }

    #[test]
    fn complex_matches_reference() {
        // Reference values from an arbitrary-precision evaluation.
        let z = digamma_complex(Complex64::new(0.5, 1.0));
        assert!((z.re + 0.051761650994412545).abs() < 1e-14);
        assert!((z.im - 1.5649405178158793).abs() < 1e-14);
        let z = digamma_complex(Complex64::new(3.0, 2.0));
        assert!((z.re - 1.1645915153739774).abs() < 1e-14);
        assert!((z.im - 0.6708072826422302).abs() < 1e-14);
    }

    #[test]
    fn conical_imaginary_part() {
        // Im ψ(1/2 + iy) = (π/2) tanh(πy)
        for &y in &[0.1, 1.0, 7.5, 40.0] {
            let z = digamma_complex(Complex64::new(0.5, y));
            assert!((z.im - 0.5 * PI * (PI * y).tanh()).abs() < 1e-13, "y = {y}");
        }
    }
}
