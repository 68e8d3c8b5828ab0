//! Free angular solutions and the zero-range diagonal coupling Q₁₁.

use super::eigen::{solve_lambda_zero_range, NuBranch};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::special::gamma::digamma;
use crate::special::legendre::FreeAngular;
use crate::special::EULER_GAMMA;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// φ(α) = π P_ν(−cos 2α), the free solution with φ′(π/2) = 0.
pub fn free_angular_solution(nu: Complex64, alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::Domain(
            "free solution is logarithmic at alpha = 0; use small_alpha_expansion".into(),
        ));
    }
    let mut f = FreeAngular::new(nu);
    let scale = crate::special::legendre::conical_scale(nu);
    Ok(f.eval_re(alpha)? * scale)
}

/// Leading small-α form 2 sin νπ (γ + ln α + ψ(1+ν)) + π cos νπ, real ν.
pub fn small_alpha_expansion(nu: f64, alpha: f64) -> f64 {
    let (s, c) = (nu * PI).sin_cos();
    2.0 * s * (EULER_GAMMA + alpha.ln() + digamma(1.0 + nu)) + PI * c
}

/// Smooth partition of unity: 1 below π/12, 0 above π/8.
pub(crate) fn chi(alpha: f64) -> f64 {
    const LO: f64 = PI / 12.0;
    const HI: f64 = PI / 8.0;
    let t = ((alpha - LO) / (HI - LO)).clamp(0.0, 1.0);
    1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}

/// sin α′ for the rotated Jacobi set (sign +1).
pub(crate) fn rotated(alpha: f64, beta: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let s2 = 0.25 * s * s + 0.75 * c * c + 0.75f64.sqrt() * s * c * beta.cos();
    s2.clamp(0.0, 1.0).sqrt().asin()
}

/// Quadrature and kernel data shared by every ρ.
struct Setup {
    alpha: Vec<f64>,
    /// sin 2α times the quadrature weight.
    weight: Vec<f64>,
    chi: Vec<f64>,
    /// Chebyshev nodes on [π/12, π/2] where φ is sampled for the kernel.
    cheb: Vec<f64>,
    /// kernel[i][j]: β-average of (1 − χ(α′)) ℓ_j(α′) at α_i.
    kernel: Vec<Vec<f64>>,
}

const CHEB_NODES: usize = 96;
const BETA_POINTS: usize = 64;

fn panels() -> (Vec<f64>, Vec<f64>) {
    let mut edges = vec![0.0];
    for i in 0..40 {
        edges.push(1e-14 * (0.1f64 / 1e-14).powf(i as f64 / 39.0));
    }
    for i in 1..25 {
        edges.push(0.1 + (FRAC_PI_2 - 0.1) * i as f64 / 24.0);
    }
    let mut x = Vec::new();
    let mut w = Vec::new();
    for e in edges.windows(2) {
        let (xi, wi) = gauss_legendre(20, e[0], e[1]);
        x.extend(xi);
        w.extend(wi);
    }
    (x, w)
}

/// Barycentric Lagrange basis on Chebyshev points of the second kind.
pub(crate) struct Barycentric {
    pub nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Barycentric {
    pub fn chebyshev(n: usize, a: f64, b: f64) -> Self {
        let nodes = (0..=n)
            .map(|j| 0.5 * (a + b) - 0.5 * (b - a) * (PI * j as f64 / n as f64).cos())
            .collect();
        let weights = (0..=n)
            .map(|j| {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == n {
                    0.5 * s
                } else {
                    s
                }
            })
            .collect();
        Barycentric { nodes, weights }
    }

    /// Basis values ℓ_j(x).
    pub fn basis(&self, x: f64, out: &mut [f64]) {
        if let Some(k) = self.nodes.iter().position(|&t| t == x) {
            out.iter_mut().for_each(|v| *v = 0.0);
            out[k] = 1.0;
            return;
        }
        let mut den = 0.0;
        for (j, (&t, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            out[j] = w / (x - t);
            den += out[j];
        }
        out.iter_mut().for_each(|v| *v /= den);
    }
}

fn setup() -> &'static Setup {
    static SETUP: OnceLock<Setup> = OnceLock::new();
    SETUP.get_or_init(|| {
        let (alpha, w) = panels();
        let weight = alpha
            .iter()
            .zip(&w)
            .map(|(a, w)| (2.0 * a).sin() * w)
            .collect();
        let chi_v = alpha.iter().map(|&a| chi(a)).collect();
        let bary = Barycentric::chebyshev(CHEB_NODES, PI / 12.0, FRAC_PI_2);
        let mut basis = vec![0.0; CHEB_NODES + 1];
        let kernel = alpha
            .iter()
            .map(|&a| {
                let mut row = vec![0.0; CHEB_NODES + 1];
                for m in 0..BETA_POINTS {
                    let ap = rotated(a, 2.0 * PI * m as f64 / BETA_POINTS as f64);
                    let cut = 1.0 - chi(ap);
                    if cut == 0.0 {
                        continue;
                    }
                    bary.basis(ap, &mut basis);
                    for (r, b) in row.iter_mut().zip(&basis) {
                        *r += cut * b / BETA_POINTS as f64;
                    }
                }
                row
            })
            .collect();
        Setup {
            alpha,
            weight,
            chi: chi_v,
            cheb: bary.nodes,
            kernel,
        }
    })
}

/// φ sampled on the quadrature nodes, and K[(1 − χ)φ] on the same nodes.
fn sample(nu: Complex64) -> Result<(Vec<f64>, Vec<f64>)> {
    let s = setup();
    let mut f = FreeAngular::new(nu);
    let v = s
        .alpha
        .iter()
        .map(|&a| f.eval_re(a))
        .collect::<Result<Vec<_>>>()?;
    let c = s
        .cheb
        .iter()
        .map(|&a| f.eval_re(a))
        .collect::<Result<Vec<_>>>()?;
    let k = s
        .kernel
        .iter()
        .map(|row| row.iter().zip(&c).map(|(r, c)| r * c).sum())
        .collect();
    Ok((v, k))
}

/// ⟨f|(1 + 2K)g⟩ under the sin 2α measure, split so that the kernel only
/// ever acts on the smooth part α > π/12 of its argument.
fn bilinear(v1: &[f64], k1: &[f64], v2: &[f64], k2: &[f64]) -> f64 {
    let s = setup();
    let mut direct = 0.0;
    let mut cross = 0.0;
    for i in 0..s.alpha.len() {
        let w = s.weight[i];
        let c = s.chi[i];
        direct += w * v1[i] * v2[i];
        cross += w * (c * v1[i] * k2[i] + c * v2[i] * k1[i] + (1.0 - c) * v1[i] * k2[i]);
    }
    direct + 2.0 * cross
}

/// Normalized channel function at ρ/a (values and smooth kernel part).
fn normalized(rho_over_a: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let b = solve_lambda_zero_range(rho_over_a, 1)?;
    let (mut v, mut k) = sample(b.nu())?;
    let n = bilinear(&v, &k, &v, &k);
    if !(n > 0.0) {
        return Err(Error::numerical(
            "zero-range norm",
            format!("non-positive norm {n} at rho/a = {rho_over_a}"),
        ));
    }
    let n = n.sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    k.iter_mut().for_each(|x| *x /= n);
    Ok((v, k))
}

/// Norm of the symmetrized channel function built from φ = π P_ν(−cos 2α).
pub fn symmetrized_norm(branch: NuBranch) -> Result<f64> {
    let (v, k) = sample(branch.nu())?;
    Ok(bilinear(&v, &k, &v, &k))
}

/// Relative FD step in ρ for the coupling.
pub const Q11_STEP: f64 = 1e-3;

/// Q₁₁·a² from differentiating the normalized zero-range channel function,
/// returned with the second-order estimate for a Richardson check.
pub fn q11_numerical(rho_over_a: f64) -> Result<(f64, f64)> {
    let h = Q11_STEP * rho_over_a;
    let pts: Vec<(Vec<f64>, Vec<f64>)> = [-2.0, -1.0, 1.0, 2.0]
        .iter()
        .map(|&s| normalized(rho_over_a + s * h))
        .collect::<Result<_>>()?;
    let n = pts[0].0.len();
    let d5 = |sel: fn(&(Vec<f64>, Vec<f64>)) -> &Vec<f64>| -> Vec<f64> {
        (0..n)
            .map(|i| {
                (sel(&pts[0])[i] - 8.0 * sel(&pts[1])[i] + 8.0 * sel(&pts[2])[i] - sel(&pts[3])[i])
                    / (12.0 * h)
            })
            .collect()
    };
    let d3 = |sel: fn(&(Vec<f64>, Vec<f64>)) -> &Vec<f64>| -> Vec<f64> {
        (0..n)
            .map(|i| (sel(&pts[2])[i] - sel(&pts[1])[i]) / (2.0 * h))
            .collect()
    };
    let (dv, dk) = (d5(|p| &p.0), d5(|p| &p.1));
    let (ev, ek) = (d3(|p| &p.0), d3(|p| &p.1));
    Ok((-bilinear(&dv, &dk, &dv, &dk), -bilinear(&ev, &ek, &ev, &ek)))
}

/// Q₁₁·a² at ρ/a: numerical below 12a, the −1/(3ρ²) law above 20a, and a
/// smooth blend in between.
pub fn q11_zero_range(rho_over_a: f64) -> Result<f64> {
    let law = -1.0 / (3.0 * rho_over_a * rho_over_a);
    if rho_over_a >= 20.0 {
        return Ok(law);
    }
    let (q, _) = q11_numerical(rho_over_a)?;
    if rho_over_a <= 12.0 {
        return Ok(q);
    }
    let t = (rho_over_a - 12.0) / 8.0;
    let w = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    Ok((1.0 - w) * q + w * law)
}
