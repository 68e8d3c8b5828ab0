//! Collocation grid in α and the discretized Faddeev operators on it.
//!
//! Nodes are Chebyshev–Lobatto points in s ∈ [0, 1], mapped by
//! α = (π/2) sinh(As)/sinh(A) to cluster toward α = 0 where the potential
//! lives at large ρ. The zero-slope conditions at both ends are eliminated,
//! so the unknowns are the interior values.

use super::coords::{rotated_angle, MIN_BETA_POINTS};
use crate::error::{Error, Result};
use crate::quad::{cheb_lobatto01, clenshaw_curtis01};
use faer::Mat;
use std::f64::consts::{FRAC_PI_2, PI};

/// Default number of collocation intervals.
pub const DEFAULT_NODES: usize = 140;
/// Default β-quadrature size.
pub const DEFAULT_BETA: usize = 64;
/// Minimum number of nodes inside the potential region.
pub const MIN_NODES_IN_RANGE: usize = 20;

/// Angular grid together with the ρ-independent operator pieces.
pub struct AngularGrid {
    n: usize,
    m: usize,
    map: f64,
    s: Vec<f64>,
    alpha: Vec<f64>,
    /// Quadrature weights for sin 2α dα at all n + 1 nodes.
    weights: Vec<f64>,
    bary: Vec<f64>,
    /// Full vector from interior values, (n+1) × (n−1).
    pub(crate) ext: Mat<f64>,
    /// −∂²α − 2cot 2α ∂α on interior rows.
    pub(crate) kinetic: Mat<f64>,
    /// β-average at interior rows, acting on interior values.
    pub(crate) kernel: Mat<f64>,
    /// ⟨f|(1 + 2K)g⟩ for interior vectors.
    pub(crate) bilinear: Mat<f64>,
    /// Interior values to (1 + 2K)φ at all nodes.
    pub(crate) total: Mat<f64>,
}

const CUT_LO: f64 = 0.05;
const CUT_HI: f64 = PI / 6.0 - 0.05;

/// Smooth partition: 1 below 0.05, 0 above π/6 − 0.05, C^∞ in between. The
/// upper edge stays below π/6 so that α′ never falls inside the cut region
/// when α does.
fn partition(alpha: f64) -> f64 {
    if alpha <= CUT_LO {
        return 1.0;
    }
    if alpha >= CUT_HI {
        return 0.0;
    }
    let t = (alpha - CUT_LO) / (CUT_HI - CUT_LO);
    let f = |x: f64| (-1.0 / x).exp();
    f(1.0 - t) / (f(1.0 - t) + f(t))
}

/// Solve (π/2)A/sinh A = ℓ for the grading parameter A.
fn grading(ell: f64) -> f64 {
    if ell >= 0.5 {
        return 0.0;
    }
    let f = |a: f64| FRAC_PI_2 * a / a.sinh() - ell;
    let (mut lo, mut hi) = (1e-8, 200.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Chebyshev differentiation matrix on the ascending points of `cheb_lobatto01`.
fn cheb_diff(n: usize, s: &[f64]) -> Vec<Vec<f64>> {
    let c = |j: usize| {
        let e = if j == 0 || j == n { 2.0 } else { 1.0 };
        if j % 2 == 0 {
            e
        } else {
            -e
        }
    };
    let mut d = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..=n {
        let mut sum = 0.0;
        for j in 0..=n {
            if i != j {
                d[i][j] = c(i) / c(j) / (s[i] - s[j]);
                sum += d[i][j];
            }
        }
        d[i][i] = -sum;
    }
    d
}

impl AngularGrid {
    /// Grid with n intervals, M β-points, graded for a potential occupying α ≲ ℓ.
    pub fn new(n: usize, m: usize, ell: f64) -> Result<Self> {
        if n < 16 {
            return Err(Error::Config(format!(
                "angular grid needs at least 16 intervals, got {n}"
            )));
        }
        if m < MIN_BETA_POINTS {
            return Err(Error::Config(format!(
                "beta quadrature needs at least {MIN_BETA_POINTS} points, got {m}"
            )));
        }
        if !(ell > 0.0) {
            return Err(Error::Config(format!(
                "potential width must be positive, got {ell}"
            )));
        }
        let map = grading(ell);
        let s = cheb_lobatto01(n);
        let (alpha, d1, d2): (Vec<f64>, Vec<f64>, Vec<f64>) = if map == 0.0 {
            (
                s.iter().map(|s| FRAC_PI_2 * s).collect(),
                vec![FRAC_PI_2; n + 1],
                vec![0.0; n + 1],
            )
        } else {
            let sh = map.sinh();
            let a = s
                .iter()
                .map(|s| FRAC_PI_2 * (map * s).sinh() / sh)
                .collect();
            let p = s
                .iter()
                .map(|s| FRAC_PI_2 * map * (map * s).cosh() / sh)
                .collect();
            let q = s
                .iter()
                .map(|s| FRAC_PI_2 * map * map * (map * s).sinh() / sh)
                .collect();
            (a, p, q)
        };
        let qw = clenshaw_curtis01(n);
        let weights = (0..=n)
            .map(|j| qw[j] * d1[j] * (2.0 * alpha[j]).sin())
            .collect();
        let bary = (0..=n)
            .map(|j| {
                let v = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == n {
                    0.5 * v
                } else {
                    v
                }
            })
            .collect();
        let d = cheb_diff(n, &s);

        // φ₀ and φₙ from the zero-slope rows
        let (a00, a0n, an0, ann) = (d[0][0], d[0][n], d[n][0], d[n][n]);
        let det = a00 * ann - a0n * an0;
        let ext = Mat::<f64>::from_fn(n + 1, n - 1, |i, j| {
            let k = j + 1;
            if i == 0 {
                -(ann * d[0][k] - a0n * d[n][k]) / det
            } else if i == n {
                -(-an0 * d[0][k] + a00 * d[n][k]) / det
            } else if i == k {
                1.0
            } else {
                0.0
            }
        });

        let dm = Mat::<f64>::from_fn(n + 1, n + 1, |i, j| d[i][j]);
        let dd = &dm * &dm;
        let kin_full = Mat::<f64>::from_fn(n + 1, n + 1, |i, j| {
            if i == 0 || i == n {
                return 0.0;
            }
            let da = d[i][j] / d1[i];
            let daa = (dd[(i, j)] - d2[i] / d1[i] * d[i][j]) / (d1[i] * d1[i]);
            -(daa + 2.0 / (2.0 * alpha[i]).tan() * da)
        });
        let kin = &kin_full * &ext;
        let kinetic = Mat::<f64>::from_fn(n - 1, n - 1, |i, j| kin[(i + 1, j)]);

        let mut grid = AngularGrid {
            n,
            m,
            map,
            s,
            alpha,
            weights,
            bary,
            ext,
            kinetic,
            kernel: Mat::zeros(0, 0),
            bilinear: Mat::zeros(0, 0),
            total: Mat::zeros(0, 0),
        };

        // β-averages at every node. The operator uses M points; the norm and
        // the reported totals get a denser rule, since χ varies quickly and
        // the small-α peak reappears as a narrow feature in β near α = π/3.
        let mut plain = Mat::<f64>::zeros(n + 1, n + 1);
        let mut cut = Mat::<f64>::zeros(n + 1, n + 1);
        let mut dense = Mat::<f64>::zeros(n + 1, n + 1);
        let mut row = vec![0.0; n + 1];
        let m_cut = (4 * m).max(256);
        for i in 0..=n {
            for k in 0..m {
                let ap = rotated_angle(grid.alpha[i], 2.0 * PI * k as f64 / m as f64, 1.0);
                grid.basis(ap, &mut row);
                for j in 0..=n {
                    plain[(i, j)] += row[j] / m as f64;
                }
            }
            for k in 0..m_cut {
                let ap = rotated_angle(grid.alpha[i], 2.0 * PI * k as f64 / m_cut as f64, 1.0);
                let c = 1.0 - partition(ap);
                grid.basis(ap, &mut row);
                for j in 0..=n {
                    dense[(i, j)] += row[j] / m_cut as f64;
                    cut[(i, j)] += c * row[j] / m_cut as f64;
                }
            }
        }
        let plain_e = &plain * &grid.ext;
        grid.kernel = Mat::<f64>::from_fn(n - 1, n - 1, |i, j| plain_e[(i + 1, j)]);
        let dense_e = &dense * &grid.ext;
        grid.total = Mat::<f64>::from_fn(n + 1, n - 1, |i, j| grid.ext[(i, j)] + 2.0 * dense_e[(i, j)]);

        // ⟨φ|Kφ⟩ = 2⟨χφ|K(1 − χ)φ⟩ + ⟨(1 − χ)φ|K(1 − χ)φ⟩ because K(χφ)
        // vanishes on the support of χ. The kernel then only averages the
        // smooth part, never the peak at small α.
        let w = &grid.weights;
        let x: Vec<f64> = grid.alpha.iter().map(|&a| partition(a)).collect();
        let half = Mat::<f64>::from_fn(n + 1, n + 1, |i, j| w[i] * (1.0 + x[i]) * cut[(i, j)]);
        let bm = Mat::<f64>::from_fn(n + 1, n + 1, |i, j| {
            let id = if i == j { w[i] } else { 0.0 };
            id + half[(i, j)] + half[(j, i)]
        });
        grid.bilinear = grid.ext.transpose() * &bm * &grid.ext;
        Ok(grid)
    }

    /// Default grid for a finite-range potential of range `range` at hyperradius ρ.
    pub fn for_range(range: f64, rho: f64, n: usize, m: usize) -> Result<Self> {
        let ell = (range / (2f64.sqrt() * rho)).min(0.5);
        let g = Self::new(n, m, ell)?;
        let width = (range / (2f64.sqrt() * rho)).min(FRAC_PI_2);
        let inside = g.alpha[1..n].iter().filter(|&&a| a < width).count();
        if inside < MIN_NODES_IN_RANGE {
            return Err(Error::Grid(format!(
                "only {inside} nodes below alpha = {width:.3e} at rho = {rho}; need {MIN_NODES_IN_RANGE}"
            )));
        }
        Ok(g)
    }

    fn s_of_alpha(&self, a: f64) -> f64 {
        if self.map == 0.0 {
            a / FRAC_PI_2
        } else {
            (a * self.map.sinh() / FRAC_PI_2).asinh() / self.map
        }
    }

    /// Barycentric interpolation weights for the value at α.
    pub(crate) fn basis(&self, alpha: f64, out: &mut [f64]) {
        let t = self.s_of_alpha(alpha);
        if let Some(k) = self.s.iter().position(|&s| (t - s).abs() < 1e-15) {
            out.iter_mut().for_each(|v| *v = 0.0);
            out[k] = 1.0;
            return;
        }
        let mut den = 0.0;
        for j in 0..=self.n {
            out[j] = self.bary[j] / (t - self.s[j]);
            den += out[j];
        }
        out.iter_mut().for_each(|v| *v /= den);
    }

    /// Interpolate a full nodal vector at α.
    pub fn interpolate(&self, values: &[f64], alpha: f64) -> f64 {
        let mut row = vec![0.0; self.n + 1];
        self.basis(alpha, &mut row);
        row.iter().zip(values).map(|(a, b)| a * b).sum()
    }

    /// Interior nodes, strictly inside (0, π/2) and ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.alpha[1..self.n]
    }

    /// All nodes including α = 0 and α = π/2.
    pub fn all_nodes(&self) -> &[f64] {
        &self.alpha
    }

    /// Weights for ∫ f sin 2α dα at [`all_nodes`](Self::all_nodes).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn intervals(&self) -> usize {
        self.n
    }

    pub fn beta_points(&self) -> usize {
        self.m
    }

    /// Full nodal vector from interior values.
    pub fn extend(&self, interior: &[f64]) -> Vec<f64> {
        (0..=self.n)
            .map(|i| {
                (0..self.n - 1)
                    .map(|j| self.ext[(i, j)] * interior[j])
                    .sum()
            })
            .collect()
    }
}
