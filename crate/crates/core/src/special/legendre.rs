//! Legendre functions P_ν(x) of real or complex degree on (−1, 1].
//!
//! Two series are used. Near x = 1 the Gauss series
//! ₂F₁(−ν, ν+1; 1; (1−x)/2) converges fast. Near x = −1 it does not, and the
//! logarithmic connection series around the singular endpoint takes over.
//! Both are written in terms of the hyperangle, since the main consumer is
//! φ(α) = π P_ν(−cos 2α).

use super::gamma::digamma_complex;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

const MAX_TERMS: usize = 2_000_000;
const TERM_TOL: f64 = 1e-17;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// cosh(π|Im ν|), the natural growth of P_ν on the conical line.
pub fn conical_scale(nu: Complex64) -> f64 {
    (PI * nu.im.abs()).cosh()
}

/// (sin πν, cos πν) divided by cosh(π Im ν), safe for large |Im ν|.
fn trig_scaled(nu: Complex64) -> (Complex64, Complex64) {
    let a = PI * nu.re;
    let t = (PI * nu.im).tanh();
    (
        Complex64::new(a.sin(), a.cos() * t),
        Complex64::new(a.cos(), -a.sin() * t),
    )
}

fn integer_degree(nu: Complex64) -> Option<usize> {
    if nu.im != 0.0 || nu.re != nu.re.round() {
        return None;
    }
    // P_ν = P_{−ν−1}
    let n = if nu.re < 0.0 { -nu.re - 1.0 } else { nu.re };
    Some(n as usize)
}

/// Legendre polynomial P_n(x) by the three-term recurrence.
pub fn legendre_poly(n: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return p0;
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Σ c_k z^k with c_k = (−ν)_k (ν+1)_k / k!², i.e. ₂F₁(−ν, ν+1; 1; z).
fn gauss_series(nu: Complex64, z: f64) -> Result<Complex64> {
    let mut sum = c(1.0);
    let mut term = c(1.0);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (c(kf) - nu) * (nu + kf + 1.0) * (z / ((kf + 1.0) * (kf + 1.0)));
        sum += term;
        if term.norm() <= TERM_TOL * sum.norm() && k > 2 {
            return Ok(sum);
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Domain(format!(
        "hypergeometric series did not converge at z = {z}"
    )))
}

/// π P_ν(−cos 2α) divided by [`conical_scale`]`(ν)`.
///
/// Real for real ν and for ν = −1/2 ± iτ. Errors at α ≤ 0 where the
/// function has a logarithmic singularity (unless ν is an integer).
pub fn free_solution_scaled(nu: Complex64, alpha: f64) -> Result<Complex64> {
    FreeAngular::new(nu).eval(alpha)
}

/// π P_ν(−cos 2α)/cosh(π Im ν) with series coefficients cached, for
/// repeated evaluation at one degree.
#[derive(Debug, Clone)]
pub struct FreeAngular {
    nu: Complex64,
    integer: Option<usize>,
    switch: f64,
    // Gauss series: c_k
    gauss: Vec<Complex64>,
    // log series: term_k = s^k (a_k + b_k ln sin α)
    log_a: Vec<Complex64>,
    log_b: Vec<Complex64>,
}

impl FreeAngular {
    pub fn new(nu: Complex64) -> Self {
        let integer = integer_degree(nu);
        // The log series cancels like exp(2|Im ν|α); hand over earlier when
        // the degree has a large imaginary part.
        let switch = if nu.im.abs() > 0.0 {
            FRAC_PI_4.min(4.5 / nu.im.abs())
        } else {
            FRAC_PI_4
        };
        FreeAngular {
            nu,
            integer,
            switch,
            gauss: Vec::new(),
            log_a: Vec::new(),
            log_b: Vec::new(),
        }
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    fn extend_gauss(&mut self, upto: usize) {
        if self.gauss.is_empty() {
            self.gauss.push(c(1.0));
        }
        while self.gauss.len() <= upto {
            let k = self.gauss.len() - 1;
            let kf = k as f64;
            let next = self.gauss[k] * (c(kf) - self.nu) * (self.nu + kf + 1.0)
                / ((kf + 1.0) * (kf + 1.0));
            self.gauss.push(next);
        }
    }

    fn extend_log(&mut self, upto: usize) {
        self.extend_gauss(upto);
        let nu = self.nu;
        let (sn, cs) = trig_scaled(nu);
        while self.log_a.len() <= upto {
            let k = self.log_a.len();
            let kf = k as f64;
            let kmn = c(kf) - nu;
            let pole = if kmn.re < 0.5 {
                sn * digamma_complex(nu + (1.0 - kf)) + PI * cs
            } else {
                sn * digamma_complex(kmn)
            };
            let a = -sn * (c(2.0) * digamma_complex(c(kf + 1.0)) - digamma_complex(nu + kf + 1.0))
                + pole;
            self.log_a.push(self.gauss[k] * a);
            self.log_b.push(self.gauss[k] * sn * 2.0);
        }
    }

    fn sum_gauss(&mut self, z: f64) -> Result<Complex64> {
        let mut sum = c(0.0);
        let mut zk = 1.0;
        let mut k = 0;
        loop {
            if k >= self.gauss.len() {
                self.extend_gauss(2 * k + 16);
            }
            let term = self.gauss[k] * zk;
            sum += term;
            if (k > 2 && term.norm() <= TERM_TOL * sum.norm()) || term.norm() == 0.0 {
                return Ok(sum);
            }
            zk *= z;
            k += 1;
            if k > MAX_TERMS {
                return Err(Error::Domain(format!(
                    "hypergeometric series did not converge at z = {z}"
                )));
            }
        }
    }

    fn sum_log(&mut self, alpha: f64) -> Result<Complex64> {
        let sin_a = alpha.sin();
        let s = sin_a * sin_a;
        let l = sin_a.ln();
        let mut sum = c(0.0);
        let mut sk = 1.0;
        let mut k = 0;
        loop {
            if k >= self.log_a.len() {
                self.extend_log(2 * k + 16);
            }
            let term = (self.log_a[k] + self.log_b[k] * l) * sk;
            sum += term;
            if k > 4 && term.norm() <= TERM_TOL * sum.norm().max(1e-300) {
                return Ok(sum);
            }
            sk *= s;
            k += 1;
            if k > MAX_TERMS {
                return Err(Error::numerical(
                    "legendre log series",
                    format!("no convergence at alpha = {alpha}"),
                ));
            }
        }
    }

    /// Scaled value at α ∈ (0, π/2].
    pub fn eval(&mut self, alpha: f64) -> Result<Complex64> {
        if !(alpha <= PI / 2.0 + 1e-15) {
            return Err(Error::Domain(format!("alpha = {alpha} outside (0, pi/2]")));
        }
        if let Some(n) = self.integer {
            return Ok(c(PI * legendre_poly(n, -(2.0 * alpha).cos())));
        }
        if alpha <= 0.0 {
            return Err(Error::Domain(
                "free solution is logarithmic at alpha = 0".into(),
            ));
        }
        if alpha < self.switch {
            self.sum_log(alpha)
        } else {
            let z = alpha.cos().powi(2);
            Ok(self.sum_gauss(z)? * (PI / conical_scale(self.nu)))
        }
    }

    /// Real part of [`eval`](Self::eval).
    pub fn eval_re(&mut self, alpha: f64) -> Result<f64> {
        Ok(self.eval(alpha)?.re)
    }
}

/// Legendre function of the first kind P_ν(x), −1 < x ≤ 1.
pub fn legendre_p(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > -1.0 && x <= 1.0) {
        return Err(Error::Domain(format!(
            "P_nu(x) requires -1 < x <= 1, got {x}"
        )));
    }
    if let Some(n) = integer_degree(nu) {
        return Ok(c(legendre_poly(n, x)));
    }
    let z = 0.5 * (1.0 - x);
    if z <= 0.5 {
        return gauss_series(nu, z);
    }
    // x = −cos 2α with α small
    let alpha = (0.5 * (1.0 + x)).sqrt().asin();
    let scaled = FreeAngular::new(nu).eval(alpha)?;
    Ok(scaled * (conical_scale(nu) / PI))
}

/// Real-degree convenience wrapper.
pub fn legendre_p_real(nu: f64, x: f64) -> Result<f64> {
    Ok(legendre_p(c(nu), x)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_cases() {
        for &x in &[-0.9, -0.3, 0.2, 0.99] {
            assert!((legendre_p_real(0.0, x).unwrap() - 1.0).abs() < 1e-15);
            assert!((legendre_p_real(1.0, x).unwrap() - x).abs() < 1e-15);
            assert!((legendre_p_real(2.0, x).unwrap() - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
            // P_{-ν-1} = P_ν
            assert!((legendre_p_real(-3.0, x).unwrap() - legendre_poly(2, x)).abs() < 1e-15);
        }
    }

    #[test]
    fn series_agree_in_overlap() {
        // Gauss series against log series on the same point, away from the switch.
        for nu in [
            c(0.3),
            c(-0.2),
            Complex64::new(-0.5, 2.0),
            Complex64::new(-0.5, -7.0),
        ] {
            for &alpha in &[0.3f64, 0.5, 0.7] {
                let direct =
                    gauss_series(nu, alpha.cos().powi(2)).unwrap() * PI / conical_scale(nu);
                let logs = FreeAngular::new(nu).sum_log(alpha).unwrap();
                let tol = 1e-12 * direct.norm().max(1.0) * (4.0 * nu.im.abs() * alpha).exp();
                assert!(
                    (direct - logs).norm() < tol,
                    "nu={nu} alpha={alpha}: {direct} vs {logs}"
                );
            }
        }
    }

    #[test]
    fn reference_values() {
        // Arbitrary-precision references for π P_ν(−cos 2α).
        let v = free_solution_scaled(c(0.3), 1e-6).unwrap().re;
        assert!((v - (-19.847185868343590)).abs() < 1e-12 * 20.0, "{v}");
        let v = free_solution_scaled(c(0.3), 0.1).unwrap().re;
        assert!((v - (-1.2024117889463500)).abs() < 1e-13 * 1.2, "{v}");
        let v = legendre_p_real(0.5, -0.5).unwrap();
        assert!((v - 0.16908392457168987).abs() < 1e-14, "{v}");
    }

    #[test]
    fn conical_is_real() {
        let nu = Complex64::new(-0.5, 3.0);
        for &alpha in &[0.01f64, 0.2, 0.9, 1.4] {
            let v = free_solution_scaled(nu, alpha).unwrap();
            assert!(
                v.im.abs() < 1e-12 * v.re.abs().max(1.0),
                "alpha={alpha} {v}"
            );
        }
    }

    #[test]
    fn endpoint_value() {
        for nu in [c(0.3), c(-0.45), Complex64::new(-0.5, 4.0)] {
            let v = free_solution_scaled(nu, PI / 2.0).unwrap();
            assert!((v.re - PI / conical_scale(nu)).abs() < 1e-13);
        }
        assert!(legendre_p_real(0.4, -1.0).is_err());
        assert!(free_solution_scaled(c(0.4), 0.0).is_err());
    }
}
