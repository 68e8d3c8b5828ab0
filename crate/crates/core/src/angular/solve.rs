//! Eigenpairs of the hyperangular Faddeev equation at fixed ρ.

use super::grid::AngularGrid;
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use faer::Mat;
use serde::Serialize;
use std::f64::consts::SQRT_2;

/// Weight of the projector that moves the spurious mode cos 2α out of the way.
const SPURIOUS_SHIFT: f64 = 1e4;
/// Largest imaginary part accepted, relative to 1 + |λ|.
const REAL_TOLERANCE: f64 = 1e-8;
/// The spurious eigenvalue: cos 2α is annihilated by 1 + 2K.
pub const SPURIOUS_LAMBDA: f64 = 8.0;

#[derive(Debug, Clone, Serialize)]
pub struct AngularSpectrum {
    pub rho: f64,
    /// Ascending eigenvalues.
    pub lambdas: Vec<f64>,
    /// Faddeev components φₙ at the grid's interior nodes.
    pub components: Vec<Vec<f64>>,
    /// Φₙ = (1 + 2K)φₙ at the interior nodes: the β-averaged total wave
    /// function. The full Ψₙ = Σᵢφₙ(αᵢ) has unit norm, so ∫Φₙ² sin 2α dα ≤ 1.
    pub totals: Vec<Vec<f64>>,
    /// True for the mode cos 2α, which solves the Faddeev equation with Φ = 0.
    pub spurious: Vec<bool>,
}

/// One physical eigenpair, with the component on interior nodes.
#[derive(Debug, Clone)]
pub(crate) struct Mode {
    pub lambda: f64,
    pub interior: Vec<f64>,
}

fn check_spec(spec: &PotentialSpec) -> Result<()> {
    if spec.is_zero_range() {
        return Err(Error::NotPointwise);
    }
    Ok(())
}

/// Operator matrix at ρ, with cos 2α shifted up by `shift`.
fn operator(spec: &PotentialSpec, rho: f64, grid: &AngularGrid, shift: f64) -> Mat<f64> {
    let n = grid.intervals();
    let nodes = grid.nodes();
    let v: Vec<f64> = nodes
        .iter()
        .map(|&a| 2.0 * rho * rho * spec.value(SQRT_2 * rho * a.sin()))
        .collect();
    let mut a = Mat::<f64>::from_fn(n - 1, n - 1, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        grid.kinetic[(i, j)] + v[i] * (id + 2.0 * grid.kernel[(i, j)])
    });
    if shift != 0.0 {
        let all = grid.all_nodes();
        let w = grid.weights();
        let p1: Vec<f64> = all.iter().map(|a| (2.0 * a).cos()).collect();
        let norm: f64 = p1.iter().zip(w).map(|(p, w)| w * p * p).sum();
        let row: Vec<f64> = (0..n - 1)
            .map(|j| {
                (0..=n)
                    .map(|i| w[i] * p1[i] * grid.ext[(i, j)])
                    .sum::<f64>()
                    / norm
            })
            .collect();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                a[(i, j)] += shift * p1[i + 1] * row[j];
            }
        }
    }
    a
}

/// Fix the sign so that the largest component is positive.
fn orient(v: &mut [f64]) {
    let k = (0..v.len())
        .max_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()))
        .unwrap_or(0);
    if v[k] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// B(f, g) = ⟨f|(1 + 2K)g⟩ for interior vectors.
pub(crate) fn bilinear(grid: &AngularGrid, f: &[f64], g: &[f64]) -> f64 {
    let n = f.len();
    let mut s = 0.0;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| grid.bilinear[(i, j)] * g[j]).sum();
        s += f[i] * row;
    }
    s
}

/// Lowest `count` physical modes, components scaled so that B(φ, φ) = 1/3
/// (equivalently ∫Φ² sin 2α dα = 1).
pub(crate) fn physical_modes(
    spec: &PotentialSpec,
    rho: f64,
    grid: &AngularGrid,
    count: usize,
) -> Result<Vec<Mode>> {
    check_spec(spec)?;
    if count == 0 {
        return Err(Error::Config(
            "at least one eigenpair must be requested".into(),
        ));
    }
    let n = grid.intervals();
    if count > n / 4 {
        return Err(Error::Config(format!(
            "{count} eigenpairs requested from a grid with {n} intervals"
        )));
    }
    let a = operator(spec, rho, grid, SPURIOUS_SHIFT);
    let eig = a
        .eigen()
        .map_err(|e| Error::numerical("angular eigensolver", format!("{e:?}")))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let mut order: Vec<usize> = (0..n - 1).collect();
    order.sort_by(|&i, &j| s[i].re.total_cmp(&s[j].re));
    let mut modes = Vec::with_capacity(count);
    for &k in order.iter().take(count) {
        let lam = s[k];
        if lam.im.abs() > REAL_TOLERANCE * (1.0 + lam.re.abs()) {
            return Err(Error::NonReal {
                re: lam.re,
                im: lam.im,
            });
        }
        // rotate the complex eigenvector onto the real axis
        let col = u.col(k);
        let big = (0..n - 1)
            .max_by(|&i, &j| col[i].norm().total_cmp(&col[j].norm()))
            .unwrap_or(0);
        let phase = col[big].conj() / col[big].norm();
        let mut v: Vec<f64> = (0..n - 1).map(|i| (col[i] * phase).re).collect();
        let b = bilinear(grid, &v, &v);
        if !(b > 0.0) {
            return Err(Error::numerical(
                "angular normalization",
                format!("non-positive norm {b} at rho = {rho}"),
            ));
        }
        let scale = (3.0 * b).sqrt();
        v.iter_mut().for_each(|x| *x /= scale);
        orient(&mut v);
        modes.push(Mode {
            lambda: lam.re,
            interior: v,
        });
    }
    Ok(modes)
}

/// Rayleigh quotient of the unshifted operator on cos 2α.
fn spurious_lambda(spec: &PotentialSpec, rho: f64, grid: &AngularGrid) -> (f64, Vec<f64>) {
    let a = operator(spec, rho, grid, 0.0);
    let nodes = grid.nodes();
    let w = &grid.weights()[1..grid.intervals()];
    let p: Vec<f64> = nodes.iter().map(|a| (2.0 * a).cos()).collect();
    let ap: Vec<f64> = (0..p.len())
        .map(|i| (0..p.len()).map(|j| a[(i, j)] * p[j]).sum())
        .collect();
    let num: f64 = (0..p.len()).map(|i| w[i] * p[i] * ap[i]).sum();
    let den: f64 = (0..p.len()).map(|i| w[i] * p[i] * p[i]).sum();
    let norm = den.sqrt();
    (num / den, p.iter().map(|x| x / norm).collect())
}

/// Lowest `count` eigenpairs of the Faddeev equation at ρ. The mode cos 2α
/// (λ = 8 for every potential) is kept in the list and flagged; its total
/// Φ vanishes, so its component is normalized on its own.
pub fn solve_angular(
    spec: &PotentialSpec,
    rho: f64,
    grid: &AngularGrid,
    count: usize,
) -> Result<AngularSpectrum> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!(
            "hyperradius must be positive, got {rho}"
        )));
    }
    let modes = physical_modes(spec, rho, grid, count)?;
    let (lam8, p8) = spurious_lambda(spec, rho, grid);
    let mut entries: Vec<(f64, Vec<f64>, Vec<f64>, bool)> = modes
        .into_iter()
        .map(|m| {
            let tot = total_interior(grid, &m.interior);
            (m.lambda, m.interior, tot, false)
        })
        .collect();
    entries.push((lam8, p8.clone(), vec![0.0; p8.len()], true));
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    entries.truncate(count);
    Ok(AngularSpectrum {
        rho,
        lambdas: entries.iter().map(|e| e.0).collect(),
        components: entries.iter().map(|e| e.1.clone()).collect(),
        totals: entries.iter().map(|e| e.2.clone()).collect(),
        spurious: entries.iter().map(|e| e.3).collect(),
    })
}

/// (1 + 2K)φ at all nodes.
pub(crate) fn total_full(grid: &AngularGrid, interior: &[f64]) -> Vec<f64> {
    let t = &grid.total;
    (0..t.nrows())
        .map(|i| (0..t.ncols()).map(|j| t[(i, j)] * interior[j]).sum())
        .collect()
}

fn total_interior(grid: &AngularGrid, interior: &[f64]) -> Vec<f64> {
    let full = total_full(grid, interior);
    full[1..full.len() - 1].to_vec()
}
