//! Zero-range eigenvalue condition and its roots.
//!
//! Matching the free outer solution π P_ν(−cos 2α) to the logarithmic
//! boundary condition of a contact interaction at α → 0 gives
//!
//! 2 sin νπ · ln(√2ρ/a) − 2 sin νπ (γ + ψ(1+ν)) − π cos νπ − 2φ(π/3) = 0,
//!
//! with λ = 4ν(ν+1). For λ < −1 the degree is ν = −1/2 − iτ, and the
//! condition is divided by cosh πτ, which leaves a real function that joins
//! the real branch continuously at λ = −1.

use crate::error::{Error, Result};
use crate::special::gamma::{digamma, digamma_half_plus_i};
use crate::special::legendre::FreeAngular;
use crate::special::EULER_GAMMA;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Parameterization of a real eigenvalue λ = 4ν(ν+1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NuBranch {
    /// λ ≥ −1, ν ≥ −1/2 real.
    RealNu { nu: f64 },
    /// λ < −1, ν = −1/2 − iτ with τ > 0.
    ImaginaryAxis { tau: f64 },
}

impl NuBranch {
    pub fn from_lambda(lambda: f64) -> Self {
        if lambda >= -1.0 {
            NuBranch::RealNu {
                nu: 0.5 * (-1.0 + (1.0 + lambda).sqrt()),
            }
        } else {
            NuBranch::ImaginaryAxis {
                tau: 0.5 * (-1.0 - lambda).sqrt(),
            }
        }
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            NuBranch::RealNu { nu } => 4.0 * nu * (nu + 1.0),
            NuBranch::ImaginaryAxis { tau } => -1.0 - 4.0 * tau * tau,
        }
    }

    pub fn nu(&self) -> Complex64 {
        match *self {
            NuBranch::RealNu { nu } => Complex64::new(nu, 0.0),
            NuBranch::ImaginaryAxis { tau } => Complex64::new(-0.5, -tau),
        }
    }
}

/// Residual of the eigenvalue condition; divided by cosh πτ on the
/// imaginary axis.
pub fn eig18_residual(branch: NuBranch, rho_over_a: f64) -> f64 {
    let l = (2f64.sqrt() * rho_over_a).ln();
    match branch {
        NuBranch::RealNu { nu } => {
            let phi = FreeAngular::new(Complex64::new(nu, 0.0))
                .eval_re(PI / 3.0)
                .unwrap_or(f64::NAN);
            let (s, c) = (nu * PI).sin_cos();
            if s == 0.0 {
                return -PI * c - 2.0 * phi;
            }
            2.0 * s * l - 2.0 * s * (EULER_GAMMA + digamma(1.0 + nu)) - PI * c - 2.0 * phi
        }
        NuBranch::ImaginaryAxis { tau } => {
            // φ(π/3)/cosh πτ is below e^{−2πτ/3}; drop it once negligible.
            let phi = if tau < 200.0 {
                FreeAngular::new(Complex64::new(-0.5, -tau))
                    .eval_re(PI / 3.0)
                    .unwrap_or(0.0)
            } else {
                0.0
            };
            -2.0 * (l - EULER_GAMMA - digamma_half_plus_i(tau)) - 2.0 * phi
        }
    }
}

/// Residual as a function of λ.
pub fn residual_at_lambda(lambda: f64, rho_over_a: f64) -> f64 {
    eig18_residual(NuBranch::from_lambda(lambda), rho_over_a)
}

/// ν = 1 solves the condition identically (its symmetrized wave function
/// vanishes); dividing it out keeps the physical roots isolated.
fn reduced(lambda: f64, rho_over_a: f64) -> f64 {
    let r = residual_at_lambda(lambda, rho_over_a);
    if lambda > -1.0 {
        let nu = 0.5 * (-1.0 + (1.0 + lambda).sqrt());
        r / (nu - 1.0)
    } else {
        // sign of (ν − 1) on the real branch below ν = 1 is negative
        -r
    }
}

/// Bisection polished by Illinois false position, on a sign-changing bracket.
pub(crate) fn refine_root(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<f64> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::numerical(
            "root refinement",
            format!("no sign change on [{lo}, {hi}]"),
        ));
    }
    let mut side = 0i32;
    for _ in 0..300 {
        let x = (lo * fhi - hi * flo) / (fhi - flo);
        let x = if x.is_finite() && x > lo && x < hi {
            x
        } else {
            0.5 * (lo + hi)
        };
        let fx = f(x);
        if fx == 0.0 || (hi - lo) <= tol * (1.0 + x.abs()) {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sample points in λ for the root scan: dense in τ below −1, in ν above.
fn scan_points(rho_over_a: f64, n: usize) -> Vec<f64> {
    // λ₁ ≈ −8e^{−2γ}ρ²/a² − 4/3 at large ρ; leave ample room below.
    let tau_max = 0.5 * (2.6 * rho_over_a * rho_over_a + 11.0).sqrt();
    let mut pts = Vec::new();
    let m = 400;
    for i in (1..=m).rev() {
        let tau = tau_max * (i as f64 / m as f64).powi(2);
        pts.push(-1.0 - 4.0 * tau * tau);
    }
    let nu_max = n as f64 + 1.5;
    let steps = (400.0 * nu_max) as usize;
    for i in 0..=steps {
        // offset keeps ν = 1 off the grid
        let nu = -0.5 + (nu_max + 0.5) * (i as f64 + 0.37) / (steps as f64 + 1.0);
        pts.push(4.0 * nu * (nu + 1.0));
    }
    pts
}

/// The n-th (1-based) eigenvalue at ρ/a, excluding the trivial ν = 1.
pub fn solve_lambda_zero_range(rho_over_a: f64, n: usize) -> Result<NuBranch> {
    if !(rho_over_a > 0.0) || n == 0 {
        return Err(Error::Domain(format!(
            "need rho/a > 0 and n >= 1, got {rho_over_a}, {n}"
        )));
    }
    let pts = scan_points(rho_over_a, n);
    let vals: Vec<f64> = pts.iter().map(|&l| reduced(l, rho_over_a)).collect();
    let mut found = 0;
    for i in 0..pts.len() - 1 {
        if vals[i] == 0.0 || vals[i].signum() != vals[i + 1].signum() {
            found += 1;
            if found == n {
                let (lo, hi) = (pts[i], pts[i + 1]);
                // refine in the natural parameter of the branch
                let branch = if hi <= -1.0 {
                    let t_lo = 0.5 * (-1.0 - hi).sqrt();
                    let t_hi = 0.5 * (-1.0 - lo).sqrt();
                    let tau = refine_root(
                        |t| -eig18_residual(NuBranch::ImaginaryAxis { tau: t }, rho_over_a),
                        t_lo,
                        t_hi,
                        1e-15,
                    )?;
                    NuBranch::ImaginaryAxis { tau }
                } else if lo >= -1.0 {
                    let to_nu = |l: f64| 0.5 * (-1.0 + (1.0 + l).sqrt());
                    let nu = refine_root(
                        |v| reduced(4.0 * v * (v + 1.0), rho_over_a),
                        to_nu(lo),
                        to_nu(hi),
                        1e-15,
                    )?;
                    NuBranch::RealNu { nu }
                } else {
                    let l = refine_root(|l| reduced(l, rho_over_a), lo, hi, 1e-15)?;
                    NuBranch::from_lambda(l)
                };
                return Ok(branch);
            }
        }
    }
    Err(Error::numerical(
        "zero-range eigenvalue",
        format!(
            "only {found} roots in lambda in [{}, {}] at rho/a = {rho_over_a}",
            pts[0],
            pts[pts.len() - 1]
        ),
    ))
}

/// Lowest eigenvalue at ρ/a.
pub fn lambda1(rho_over_a: f64) -> Result<f64> {
    Ok(solve_lambda_zero_range(rho_over_a, 1)?.lambda())
}

/// Small-ν law for the lowest real branch: ν ≈ (3/2)/ln(4√2ρ/(3a)).
pub fn small_nu_estimate(rho_over_a: f64) -> f64 {
    1.5 / (4.0 * 2f64.sqrt() * rho_over_a / 3.0).ln()
}

/// Parabolic bound-pair law λ ≈ −4/3 − 8e^{−2γ}(ρ/a)².
pub fn parabola(rho_over_a: f64) -> f64 {
    -4.0 / 3.0 - 8.0 * (-2.0 * EULER_GAMMA).exp() * rho_over_a * rho_over_a
}
