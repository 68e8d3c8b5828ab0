//! Coupled hyperradial equations and their bound states.
//!
//! With f = Σ fₙΦₙ the equations read −(∂ + P)²f + Wf = 2Ef with
//! W = diag((λₙ + 3/4)/ρ²) + G + P². The transform f = Og, O′ = −PO,
//! removes the first-derivative coupling, leaving g″ = (OᵀWO − 2E)g. In
//! u = ln ρ with g = ρ^{1/2}y this becomes y″ = [ρ²(OᵀWO − 2E) + 1/4]y,
//! integrated by the matrix renormalized Numerov method.

use super::small::{identity, inverse, matmul, matvec, negative_count, symmetric_eigen, transpose};
use super::table::ChannelTable;
use crate::error::{Error, Result};
use crate::interp::Spline;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    /// Step in u = ln ρ.
    pub du: f64,
    /// ∫√M du past the outer turning point where the sweep stops.
    pub depth: f64,
    /// Relative energy tolerance.
    pub energy_tolerance: f64,
    /// Keep every k-th point of the returned wavefunctions.
    pub sample_stride: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions { du: 2e-3, depth: 40.0, energy_tolerance: 1e-10, sample_stride: 1 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeBodyState {
    pub e3: f64,
    /// Excitation index: 0 for the ground state.
    pub nodes: usize,
    pub rho: Vec<f64>,
    /// Radial functions fₙ(ρ) in the adiabatic basis, Σₙ∫fₙ² dρ = 1.
    pub f: Vec<Vec<f64>>,
    /// √⟨ρ²⟩.
    pub rms_rho: f64,
}

/// ∫ g dρ over samples, trapezoidal in ln ρ.
fn integrate(rho: &[f64], g: impl Fn(usize) -> f64) -> f64 {
    (1..rho.len())
        .map(|i| 0.5 * (rho[i] / rho[i - 1]).ln() * (g(i) * rho[i] + g(i - 1) * rho[i - 1]))
        .sum()
}

/// The radial problem sampled on a uniform u grid.
pub struct RadialModel {
    n: usize,
    u: Vec<f64>,
    du: f64,
    rho2: Vec<f64>,
    /// ρ²OᵀWO + 1/4, row-major n×n per point.
    m0: Vec<Vec<f64>>,
    /// Lowest eigenvalue of m0 at each point.
    mu0: Vec<f64>,
    /// Diabatic transform at each point.
    o: Vec<Vec<f64>>,
    threshold: f64,
    depth: f64,
}

impl RadialModel {
    pub fn new(table: &ChannelTable, opts: &RadialOptions) -> Result<Self> {
        Self::up_to(table, f64::INFINITY, opts)
    }

    /// Model on the part of the table with ρ ≤ rho_max.
    pub fn up_to(table: &ChannelTable, rho_max: f64, opts: &RadialOptions) -> Result<Self> {
        let keep = table.rho.iter().take_while(|&&r| r <= rho_max * (1.0 + 1e-12)).count();
        if keep < 4 {
            return Err(Error::Config(format!("table has fewer than 4 points below rho = {rho_max}")));
        }
        if !(opts.du > 0.0) {
            return Err(Error::Config("radial step must be positive".into()));
        }
        let n = table.channels();
        let ut: Vec<f64> = table.rho[..keep].iter().map(|r| r.ln()).collect();
        let r_last = table.rho[keep - 1];
        // subtract the ρ² growth of bound-pair channels so the splines stay smooth
        let c: Vec<f64> = (0..n).map(|k| (table.lambdas[k][keep - 1] / (r_last * r_last)).min(0.0)).collect();
        let lam: Vec<Spline> = (0..n)
            .map(|k| {
                let y = (0..keep).map(|j| table.lambdas[k][j] - c[k] * table.rho[j] * table.rho[j]).collect();
                Spline::new(ut.clone(), y)
            })
            .collect();
        let entry = |m: &Vec<Vec<Vec<f64>>>, a: usize, b: usize, pow: i32| {
            let y = (0..keep).map(|j| m[a][b][j] * table.rho[j].powi(pow)).collect();
            Spline::new(ut.clone(), y)
        };
        let g: Vec<Vec<Spline>> = (0..n).map(|a| (0..n).map(|b| entry(&table.g, a, b, 2)).collect()).collect();
        let p: Vec<Vec<Spline>> = (0..n).map(|a| (0..n).map(|b| entry(&table.p, a, b, 1)).collect()).collect();

        let steps = ((ut[keep - 1] - ut[0]) / opts.du).floor() as usize;
        let du = opts.du;
        let u: Vec<f64> = (0..=steps).map(|i| ut[0] + i as f64 * du).collect();
        // ρP as an antisymmetric matrix at u
        let rp = |x: f64| -> Vec<f64> {
            let mut m = vec![0.0; n * n];
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        m[a * n + b] = p[a][b].eval(x);
                    }
                }
            }
            for a in 0..n {
                for b in 0..a {
                    let s = 0.5 * (m[a * n + b] - m[b * n + a]);
                    m[a * n + b] = s;
                    m[b * n + a] = -s;
                }
            }
            m
        };
        // O′ = −ρP O in u, fourth-order Runge–Kutta
        let mut o = Vec::with_capacity(u.len());
        let mut cur = identity(n);
        o.push(cur.clone());
        if n > 1 {
            for i in 0..steps {
                let x = u[i];
                let f = |x: f64, m: &[f64]| -> Vec<f64> {
                    matmul(&rp(x), m, n).into_iter().map(|v| -v).collect()
                };
                let k1 = f(x, &cur);
                let t: Vec<f64> = cur.iter().zip(&k1).map(|(c, k)| c + 0.5 * du * k).collect();
                let k2 = f(x + 0.5 * du, &t);
                let t: Vec<f64> = cur.iter().zip(&k2).map(|(c, k)| c + 0.5 * du * k).collect();
                let k3 = f(x + 0.5 * du, &t);
                let t: Vec<f64> = cur.iter().zip(&k3).map(|(c, k)| c + du * k).collect();
                let k4 = f(x + du, &t);
                for j in 0..n * n {
                    cur[j] += du / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
                }
                o.push(cur.clone());
            }
        } else {
            o.resize(u.len(), cur.clone());
        }
        let mut m0 = Vec::with_capacity(u.len());
        let mut mu0 = Vec::with_capacity(u.len());
        let mut rho2 = Vec::with_capacity(u.len());
        for (i, &x) in u.iter().enumerate() {
            let r2 = (2.0 * x).exp();
            let mut w = vec![0.0; n * n];
            let pm = rp(x);
            let pp = matmul(&pm, &pm, n);
            for a in 0..n {
                for b in 0..n {
                    let gab = 0.5 * (g[a][b].eval(x) + g[b][a].eval(x));
                    w[a * n + b] = gab + pp[a * n + b];
                }
                w[a * n + a] += lam[a].eval(x) + c[a] * r2 + 0.75;
            }
            let oi = &o[i];
            let mut m = matmul(&transpose(oi, n), &matmul(&w, oi, n), n);
            for a in 0..n {
                for b in 0..a {
                    let s = 0.5 * (m[a * n + b] + m[b * n + a]);
                    m[a * n + b] = s;
                    m[b * n + a] = s;
                }
                m[a * n + a] += 0.25;
            }
            mu0.push(symmetric_eigen(&m, n).0[0]);
            m0.push(m);
            rho2.push(r2);
        }
        Ok(RadialModel { n, u, du, rho2, m0, mu0, o, threshold: table.threshold, depth: opts.depth })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn rho(&self) -> Vec<f64> {
        self.u.iter().map(|u| u.exp()).collect()
    }

    /// Lowest energy at which any point is classically allowed.
    fn floor(&self) -> f64 {
        self.mu0
            .iter()
            .zip(&self.rho2)
            .map(|(m, r2)| m / (2.0 * r2))
            .fold(f64::INFINITY, f64::min)
    }

    fn mu(&self, i: usize, e: f64) -> f64 {
        self.mu0[i] - 2.0 * e * self.rho2[i]
    }

    /// Last index of the sweep at energy e, and the outer turning point.
    fn extent(&self, e: f64, truncate: bool) -> (usize, usize) {
        let last = self.u.len() - 1;
        let turn = (0..=last).rev().find(|&i| self.mu(i, e) < 0.0).unwrap_or(0);
        if !truncate {
            return (last, turn);
        }
        let mut acc = 0.0;
        for i in turn + 1..=last {
            acc += self.mu(i, e).max(0.0).sqrt() * self.du;
            if acc > self.depth {
                return (i, turn);
            }
        }
        (last, turn)
    }

    /// (I − T)^{-1} and U = 12(I − T)^{-1} − 10 at point i.
    fn numerov_blocks(&self, i: usize, e: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.n;
        let h2 = self.du * self.du / 12.0;
        let mut a = identity(n);
        for k in 0..n * n {
            a[k] -= h2 * self.m0[i][k];
        }
        for k in 0..n {
            a[k * n + k] += h2 * 2.0 * e * self.rho2[i];
        }
        let inv = inverse(&a, n).ok_or_else(|| Error::numerical("radial sweep", "singular Numerov block"))?;
        let mut u = inv.iter().map(|x| 12.0 * x).collect::<Vec<f64>>();
        for k in 0..n {
            u[k * n + k] -= 10.0;
        }
        Ok((inv, u))
    }

    /// F₁F₀⁻¹ at the inner edge from the local power law of each channel.
    fn start(&self, e: f64) -> Vec<f64> {
        let n = self.n;
        let mut r = vec![0.0; n * n];
        for k in 0..n {
            let m = (self.m0[0][k * n + k] - 2.0 * e * self.rho2[0]).max(0.0);
            r[k * n + k] = (self.du * m.sqrt()).exp();
        }
        r
    }

    /// Outward ratio matrices R_i = F_{i+1}F_i⁻¹ for i < end, and the number
    /// of negative eigenvalues summed along the way.
    fn outward(&self, e: f64, end: usize, keep: bool) -> Result<(Vec<Vec<f64>>, usize)> {
        let n = self.n;
        let mut r = self.start(e);
        let mut count = negative_count(&r, n);
        let mut all = Vec::new();
        if keep {
            all.push(r.clone());
        }
        for i in 1..end {
            let (_, u) = self.numerov_blocks(i, e)?;
            let ri = inverse(&r, n).ok_or_else(|| Error::numerical("radial sweep", "singular ratio matrix"))?;
            r = u.iter().zip(&ri).map(|(a, b)| a - b).collect();
            count += negative_count(&r, n);
            if keep {
                all.push(r.clone());
            }
        }
        Ok((all, count))
    }

    /// Inward ratio matrices S_i = F_{i−1}F_i⁻¹ for stop ≤ i < end (F_end = 0).
    fn inward(&self, e: f64, stop: usize, end: usize) -> Result<Vec<Vec<f64>>> {
        let n = self.n;
        let mut out = vec![Vec::new(); end - stop];
        let mut s: Option<Vec<f64>> = None;
        for i in (stop..end).rev() {
            let (_, u) = self.numerov_blocks(i, e)?;
            let next = match &s {
                None => u,
                Some(prev) => {
                    let pi = inverse(prev, n).ok_or_else(|| Error::numerical("radial sweep", "singular inward ratio"))?;
                    u.iter().zip(&pi).map(|(a, b)| a - b).collect()
                }
            };
            out[i - stop] = next.clone();
            s = Some(next);
        }
        Ok(out)
    }

    /// Number of states below e.
    pub fn count_below(&self, e: f64) -> Result<usize> {
        if e <= self.floor() {
            return Ok(0);
        }
        let (end, _) = self.extent(e, true);
        Ok(self.outward(e, end, false)?.1)
    }

    /// Node count of the outward solution at e over the whole grid.
    pub fn nodes_at(&self, e: f64) -> Result<usize> {
        let (end, _) = self.extent(e, false);
        Ok(self.outward(e, end + 1, false)?.1)
    }

    /// Matching matrix R_m − S_{m+1}⁻¹ at e.
    fn matching(&self, e: f64, m: usize, end: usize) -> Result<Vec<f64>> {
        let (r, _) = self.outward(e, m + 1, true)?;
        let s = self.inward(e, m + 1, end)?;
        let si = inverse(&s[0], self.n).ok_or_else(|| Error::numerical("radial matching", "singular inward ratio"))?;
        Ok(r[m].iter().zip(&si).map(|(a, b)| a - b).collect())
    }

    /// Energy of the level with index `level` inside [lo, hi].
    fn level(&self, level: usize, lo: f64, hi: f64, tol: f64) -> Result<f64> {
        let (mut a, mut b) = (lo, hi);
        let scale = |x: f64, y: f64| x.abs().max(y.abs()).max(1e-300);
        while (b - a) > 1e-6 * scale(a, b) {
            let mid = 0.5 * (a + b);
            if self.count_below(mid)? > level {
                b = mid;
            } else {
                a = mid;
            }
        }
        // secant polish on the matching eigenvalue that changes sign
        if let Some(e) = self.polish(a, b, tol)? {
            return Ok(e);
        }
        while (b - a) > tol * scale(a, b) {
            let mid = 0.5 * (a + b);
            if self.count_below(mid)? > level {
                b = mid;
            } else {
                a = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn polish(&self, a: f64, b: f64, tol: f64) -> Result<Option<f64>> {
        let mid = 0.5 * (a + b);
        let (end, turn) = self.extent(mid, true);
        let m = turn.clamp(1, end.saturating_sub(3).max(1));
        if m + 2 >= end {
            return Ok(None);
        }
        let eig = |e: f64| -> Result<Vec<f64>> { Ok(symmetric_eigen(&self.matching(e, m, end)?, self.n).0) };
        let (ea, eb) = (eig(a)?, eig(b)?);
        let Some(j) = (0..self.n).find(|&j| ea[j].signum() != eb[j].signum()) else {
            return Ok(None);
        };
        let f = |e: f64| -> Result<f64> { Ok(eig(e)?[j]) };
        let (mut x0, mut x1, mut f0, mut f1) = (a, b, ea[j], eb[j]);
        let mut side = 0i32;
        for _ in 0..100 {
            let x = (x0 * f1 - x1 * f0) / (f1 - f0);
            if !(x > a.min(b) && x < a.max(b)) || !x.is_finite() {
                return Ok(None);
            }
            let fx = f(x)?;
            if fx.signum() == f1.signum() {
                x1 = x;
                f1 = fx;
                if side == 1 {
                    f0 *= 0.5;
                }
                side = 1;
            } else {
                x0 = x;
                f0 = fx;
                if side == -1 {
                    f1 *= 0.5;
                }
                side = -1;
            }
            if (x1 - x0).abs() <= tol * x.abs().max(1e-300) || fx == 0.0 {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Wavefunction at an eigenenergy: (ρ samples, fₙ samples, norm, ⟨ρ²⟩).
    fn wavefunction(&self, e: f64, stride: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>, f64, f64)> {
        let n = self.n;
        let (end, turn) = self.extent(e, true);
        let m = turn.clamp(1, end.saturating_sub(3).max(1));
        let (r, _) = self.outward(e, m + 1, true)?;
        let s = self.inward(e, m + 1, end)?;
        let si = inverse(&s[0], n).ok_or_else(|| Error::numerical("radial wavefunction", "singular inward ratio"))?;
        let d: Vec<f64> = r[m].iter().zip(&si).map(|(a, b)| a - b).collect();
        let (vals, vecs) = symmetric_eigen(&d, n);
        let k = (0..n).min_by(|&i, &j| vals[i].abs().total_cmp(&vals[j].abs())).unwrap_or(0);
        let mut f = vec![vec![0.0; n]; end + 1];
        f[m] = (0..n).map(|c| vecs[c * n + k]).collect();
        for i in (0..m).rev() {
            let ri = inverse(&r[i], n).ok_or_else(|| Error::numerical("radial wavefunction", "singular ratio"))?;
            f[i] = matvec(&ri, &f[i + 1], n);
        }
        for i in m + 1..end {
            let sinv = inverse(&s[i - m - 1], n).ok_or_else(|| Error::numerical("radial wavefunction", "singular ratio"))?;
            f[i] = matvec(&sinv, &f[i - 1], n);
        }
        // ψ = (I − T)⁻¹F, then back to the adiabatic basis: f = ρ^{1/2} O y
        let mut norm = 0.0;
        let mut r2 = 0.0;
        let mut out: Vec<Vec<f64>> = Vec::with_capacity(end + 1);
        for i in 0..=end {
            let y = if i == end {
                vec![0.0; n]
            } else {
                let (inv, _) = self.numerov_blocks(i, e)?;
                matvec(&self.o[i], &matvec(&inv, &f[i], n), n)
            };
            let w = if i == 0 || i == end { 0.5 } else { 1.0 } * self.du;
            let yy: f64 = y.iter().map(|v| v * v).sum();
            norm += w * self.rho2[i] * yy;
            r2 += w * self.rho2[i] * self.rho2[i] * yy;
            out.push(y);
        }
        let scale = norm.sqrt();
        let sign = if out[m][0] < 0.0 { -1.0 } else { 1.0 };
        let mut rho = Vec::new();
        let mut fs = vec![Vec::new(); n];
        for i in (0..=end).step_by(stride.max(1)) {
            let r = self.rho2[i].sqrt();
            rho.push(r);
            for c in 0..n {
                fs[c].push(sign * r.sqrt() * out[i][c] / scale);
            }
        }
        Ok((rho, fs, 1.0, r2 / norm))
    }
}

/// Pair threshold of the table: the lowest two-body energy, or 0.
pub fn threshold(table: &ChannelTable) -> f64 {
    table.threshold
}

/// All bound states with energy in the window (lo, hi), hi ≤ min(E₂, 0).
pub fn solve_bound_states(table: &ChannelTable, window: (f64, f64)) -> Result<Vec<ThreeBodyState>> {
    solve_bound_states_with(table, window, &RadialOptions::default())
}

pub fn solve_bound_states_with(
    table: &ChannelTable,
    window: (f64, f64),
    opts: &RadialOptions,
) -> Result<Vec<ThreeBodyState>> {
    let model = RadialModel::new(table, opts)?;
    let limit = table.threshold.min(0.0);
    let gap = 1e-9 * limit.abs().max(1e-12 / table.length_scale().powi(2));
    let hi = window.1.min(limit - gap);
    let lo = window.0.max(model.floor());
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    let below_lo = model.count_below(lo)?;
    let below_hi = model.count_below(hi)?;
    let mut states = Vec::new();
    for level in below_lo..below_hi {
        let e = model.level(level, lo, hi, opts.energy_tolerance)?;
        let (rho, f, _, r2) = model.wavefunction(e, opts.sample_stride)?;
        states.push(ThreeBodyState { e3: e, nodes: level, rho, f, rms_rho: r2.sqrt() });
    }
    Ok(states)
}

/// √⟨ρ²⟩ = (Σₙ∫fₙ²ρ²dρ)^{1/2} of a normalized state, from its samples.
pub fn rms_hyperradius(state: &ThreeBodyState) -> Result<f64> {
    let r = &state.rho;
    if r.len() < 3 || r.iter().any(|&x| !(x > 0.0)) || state.f.iter().any(|f| f.len() != r.len()) {
        return Err(Error::Contract("state samples are malformed".into()));
    }
    let dens = |i: usize| state.f.iter().map(|f| f[i] * f[i]).sum::<f64>();
    let norm = integrate(r, dens);
    if (norm - 1.0).abs() > 1e-5 {
        return Err(Error::Contract(format!("state norm is {norm}, expected 1")));
    }
    Ok(integrate(r, |i| dens(i) * r[i] * r[i]).sqrt())
}

/// Root-mean-square distance of a particle from the centre of mass,
/// √(⟨ρ²⟩/3) for three identical particles.
pub fn rms_radius(state: &ThreeBodyState) -> Result<f64> {
    Ok(rms_hyperradius(state)? / 3f64.sqrt())
}

/// Nodes of the lowest-channel outward solution at the pair threshold,
/// integrated out to rho_max.
pub fn count_zero_energy_nodes(table: &ChannelTable, rho_max: f64) -> Result<usize> {
    count_zero_energy_nodes_with(table, rho_max, &RadialOptions::default())
}

pub fn count_zero_energy_nodes_with(table: &ChannelTable, rho_max: f64, opts: &RadialOptions) -> Result<usize> {
    let single = table.truncated(1);
    let model = RadialModel::up_to(&single, rho_max, opts)?;
    model.nodes_at(table.threshold.min(0.0))
}
