//! Adiabatic channel table: λₙ(ρ) and the couplings Pₙₙ′, Qₙₙ′.

use crate::angular::grid::AngularGrid;
use crate::angular::solve::{bilinear, physical_modes, Mode};
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::zero_range::{q11_zero_range, solve_lambda_zero_range};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// What the channels are computed for.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSource {
    /// Angular eigenpairs of a finite-range potential.
    FiniteRange(PotentialSpec),
    /// Contact interaction with 2D scattering length a (single channel).
    ZeroRange { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceKind {
    FiniteRange { range: f64 },
    ZeroRange { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelOptions {
    /// Angular collocation intervals.
    pub nodes: usize,
    /// β-quadrature size.
    pub beta: usize,
    /// Relative ρ-step of the derivative stencil.
    pub step: f64,
    /// Accepted disagreement between the 5- and 3-point derivative estimates,
    /// relative to the size of the coupling.
    pub richardson_tolerance: f64,
    /// Normalized overlap below which neighbouring points are refined.
    pub min_overlap: f64,
    /// Maximum number of halvings between two table points.
    pub max_refinements: usize,
    /// Worker threads; None uses the global pool.
    pub workers: Option<usize>,
}

impl Default for ChannelOptions {
    fn default() -> Self {
        ChannelOptions {
            nodes: crate::angular::DEFAULT_NODES,
            beta: crate::angular::DEFAULT_BETA,
            step: 1e-3,
            richardson_tolerance: 1e-3,
            min_overlap: 0.8,
            max_refinements: 6,
            workers: None,
        }
    }
}

/// Channel data on an ascending ρ grid. Matrices are indexed [n][n′][j].
#[derive(Debug, Clone, Serialize)]
pub struct ChannelTable {
    pub source: SourceKind,
    pub rho: Vec<f64>,
    pub lambdas: Vec<Vec<f64>>,
    /// Qₙₙ′ = ⟨Φₙ|∂²Φₙ′/∂ρ²⟩.
    pub q: Vec<Vec<Vec<f64>>>,
    /// Pₙₙ′ = ⟨Φₙ|∂Φₙ′/∂ρ⟩, antisymmetric.
    pub p: Vec<Vec<Vec<f64>>>,
    /// Gₙₙ′ = ⟨∂Φₙ/∂ρ|∂Φₙ′/∂ρ⟩; Q = P′ − G, so Qₙₙ = −Gₙₙ.
    pub g: Vec<Vec<Vec<f64>>>,
    /// Lowest pair energy, or 0 when no pair is bound.
    pub threshold: f64,
    /// Largest ρ|Pₙₙ′ + Pₙ′ₙ| before antisymmetrization: the two ways of
    /// computing each coupling disagree by this much.
    pub p_asymmetry: f64,
}

impl ChannelTable {
    pub fn channels(&self) -> usize {
        self.lambdas.len()
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// Interaction scale: the range b or the scattering length a.
    pub fn length_scale(&self) -> f64 {
        match self.source {
            SourceKind::FiniteRange { range } => range,
            SourceKind::ZeroRange { a } => a,
        }
    }

    /// Table restricted to the first `n` channels.
    pub fn truncated(&self, n: usize) -> ChannelTable {
        let n = n.min(self.channels());
        let cut = |m: &Vec<Vec<Vec<f64>>>| m[..n].iter().map(|r| r[..n].to_vec()).collect();
        ChannelTable {
            source: self.source,
            rho: self.rho.clone(),
            lambdas: self.lambdas[..n].to_vec(),
            q: cut(&self.q),
            p: cut(&self.p),
            g: cut(&self.g),
            threshold: self.threshold,
            p_asymmetry: self.p_asymmetry,
        }
    }
}

/// U(ρ) = (λₙ + 3/4)/ρ² − Qₙₙ on the table grid.
pub fn effective_potential(table: &ChannelTable, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > table.channels() {
        return Err(Error::Config(format!("channel {n} outside 1..={}", table.channels())));
    }
    let k = n - 1;
    Ok(table
        .rho
        .iter()
        .enumerate()
        .map(|(j, &r)| (table.lambdas[k][j] + 0.75) / (r * r) - table.q[k][k][j])
        .collect())
}

/// Logarithmically spaced grid with `per_decade` points per decade.
pub fn log_grid(rho_min: f64, rho_max: f64, per_decade: usize) -> Vec<f64> {
    let decades = (rho_max / rho_min).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(1);
    (0..=n).map(|i| rho_min * (rho_max / rho_min).powf(i as f64 / n as f64)).collect()
}

/// Angular grids shared between tables. A grid depends only on the
/// interaction range, ρ and the discretization sizes, so sweeps over
/// strengths on a common ρ grid reuse them.
#[derive(Default)]
pub struct GridCache {
    grids: Mutex<HashMap<(u64, u64, usize, usize), Arc<AngularGrid>>>,
}

impl GridCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, range: f64, rho: f64, n: usize, m: usize) -> Result<Arc<AngularGrid>> {
        let key = (range.to_bits(), rho.to_bits(), n, m);
        if let Some(g) = self.grids.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(AngularGrid::for_range(range, rho, n, m)?);
        self.grids.lock().unwrap_or_else(|e| e.into_inner()).insert(key, g.clone());
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.grids.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One table point before signs are made consistent along ρ.
struct Point {
    rho: f64,
    lambdas: Vec<f64>,
    p: Vec<f64>,
    g: Vec<f64>,
    q: Vec<f64>,
    p_asymmetry: f64,
    /// Components on a reference set of angles, for tracking.
    probe: Vec<Vec<f64>>,
}

/// Fixed angles (and sin 2α weights) where components of neighbouring
/// points are compared; graded toward α = 0 so the potential region is
/// resolved at every ρ of interest.
fn probe_set() -> &'static (Vec<f64>, Vec<f64>) {
    static SET: std::sync::OnceLock<(Vec<f64>, Vec<f64>)> = std::sync::OnceLock::new();
    SET.get_or_init(|| {
        let mut edges = vec![0.0];
        for i in 0..=36 {
            edges.push(1e-8 * (0.1f64 / 1e-8).powf(i as f64 / 36.0));
        }
        for i in 1..=16 {
            edges.push(0.1 + (std::f64::consts::FRAC_PI_2 - 0.1) * i as f64 / 16.0);
        }
        let (mut a, mut w) = (Vec::new(), Vec::new());
        for e in edges.windows(2) {
            let (x, wx) = crate::quad::gauss_legendre(8, e[0], e[1]);
            for (x, wx) in x.into_iter().zip(wx) {
                a.push(x);
                w.push(wx * (2.0 * x).sin());
            }
        }
        (a, w)
    })
}

fn finite_range_point(
    spec: &PotentialSpec,
    rho: f64,
    count: usize,
    opts: &ChannelOptions,
    cache: Option<&GridCache>,
) -> Result<Point> {
    let range = spec.effective_range_scale();
    let owned;
    let grid: &AngularGrid = match cache {
        Some(c) => {
            owned = c.get(range, rho, opts.nodes, opts.beta)?;
            &owned
        }
        None => {
            owned = Arc::new(AngularGrid::for_range(range, rho, opts.nodes, opts.beta)?);
            &owned
        }
    };
    let h = opts.step * rho;
    let centre = physical_modes(spec, rho, &grid, count)?;
    let extra = count + 1;
    let mut side: Vec<Vec<Mode>> = Vec::with_capacity(4);
    for k in [-2.0, -1.0, 1.0, 2.0] {
        let modes = physical_modes(spec, rho + k * h, &grid, extra)?;
        // pair each central mode with its continuation, sign aligned
        let mut picked = Vec::with_capacity(count);
        for c in &centre {
            let (best, ov) = modes
                .iter()
                .enumerate()
                .map(|(i, m)| (i, 3.0 * bilinear(grid, &c.interior, &m.interior)))
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .ok_or_else(|| Error::numerical("channel stencil", "no modes"))?;
            if ov.abs() < 0.9 {
                return Err(Error::Tracking { rho, overlap: ov.abs() });
            }
            let mut m = modes[best].clone();
            if ov < 0.0 {
                m.interior.iter_mut().for_each(|x| *x = -*x);
            }
            picked.push(m);
        }
        side.push(picked);
    }
    let dim = centre[0].interior.len();
    let mut d5 = Vec::with_capacity(count);
    let mut d3 = Vec::with_capacity(count);
    let mut dd = Vec::with_capacity(count);
    for n in 0..count {
        let (m2, m1, p1, p2) = (&side[0][n].interior, &side[1][n].interior, &side[2][n].interior, &side[3][n].interior);
        let c = &centre[n].interior;
        d5.push((0..dim).map(|i| (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h)).collect::<Vec<f64>>());
        d3.push((0..dim).map(|i| (p1[i] - m1[i]) / (2.0 * h)).collect::<Vec<f64>>());
        dd.push(
            (0..dim)
                .map(|i| (-m2[i] + 16.0 * m1[i] - 30.0 * c[i] + 16.0 * p1[i] - p2[i]) / (12.0 * h * h))
                .collect::<Vec<f64>>(),
        );
    }
    let mut p = vec![0.0; count * count];
    let mut g = vec![0.0; count * count];
    let mut q = vec![0.0; count * count];
    let mut worst = 0.0f64;
    for a in 0..count {
        for b in 0..count {
            let pab = 3.0 * bilinear(grid, &centre[a].interior, &d5[b]);
            let gab = 3.0 * bilinear(grid, &d5[a], &d5[b]);
            let g3 = 3.0 * bilinear(grid, &d3[a], &d3[b]);
            let p3 = 3.0 * bilinear(grid, &centre[a].interior, &d3[b]);
            // derivative couplings scale like 1/ρ; compare against that
            let scale = gab.abs().max(1.0 / (rho * rho)).max(1e-300);
            let pscale = pab.abs().max(1.0 / rho);
            worst = worst.max((gab - g3).abs() / scale).max((pab - p3).abs() / pscale);
            p[a * count + b] = pab;
            g[a * count + b] = gab;
            q[a * count + b] = if a == b { -gab } else { 3.0 * bilinear(grid, &centre[a].interior, &dd[b]) };
        }
    }
    if worst > opts.richardson_tolerance {
        return Err(Error::StepSize { rho, mismatch: worst });
    }
    // enforce the exact antisymmetry of P; the symmetric part is discretization noise
    let mut p_asymmetry = 0.0f64;
    for a in 0..count {
        for b in 0..=a {
            p_asymmetry = p_asymmetry.max(rho * (p[a * count + b] + p[b * count + a]).abs());
        }
    }
    for a in 0..count {
        for b in 0..a {
            let anti = 0.5 * (p[a * count + b] - p[b * count + a]);
            p[a * count + b] = anti;
            p[b * count + a] = -anti;
        }
        p[a * count + a] = 0.0;
    }
    let (angles, _) = probe_set();
    let probe = centre
        .iter()
        .map(|m| {
            let full = grid.extend(&m.interior);
            angles.iter().map(|&x| grid.interpolate(&full, x)).collect()
        })
        .collect();
    Ok(Point { rho, lambdas: centre.iter().map(|m| m.lambda).collect(), p, g, q, p_asymmetry, probe })
}

/// Normalized overlaps between the channels of two neighbouring points.
fn overlaps(a: &Point, b: &Point) -> Vec<f64> {
    let (_, w) = probe_set();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).zip(w).map(|((x, y), w)| x * y * w).sum::<f64>();
    a.probe
        .iter()
        .zip(&b.probe)
        .map(|(x, y)| dot(x, y) / (dot(x, x) * dot(y, y)).sqrt())
        .collect()
}

/// Lowest two-body energy of a finite-range potential, or 0.
fn pair_threshold(spec: &PotentialSpec) -> Result<f64> {
    let levels = crate::twobody::bound_states(spec, crate::twobody::default_e_min(spec))?;
    Ok(levels.first().copied().unwrap_or(0.0).min(0.0))
}

fn flip(point: &mut Point, n: usize, count: usize) {
    for v in point.probe[n].iter_mut() {
        *v = -*v;
    }
    for k in 0..count {
        if k != n {
            for m in [&mut point.p, &mut point.g, &mut point.q] {
                m[n * count + k] = -m[n * count + k];
                m[k * count + n] = -m[k * count + n];
            }
        }
    }
}

fn run<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Build the channel table on `rho_grid` with `count` channels.
pub fn build_channel_table(
    source: &ChannelSource,
    rho_grid: &[f64],
    count: usize,
    opts: &ChannelOptions,
) -> Result<ChannelTable> {
    build(source, rho_grid, count, opts, None)
}

/// As [`build_channel_table`], reusing angular grids from `cache`.
pub fn build_channel_table_cached(
    source: &ChannelSource,
    rho_grid: &[f64],
    count: usize,
    opts: &ChannelOptions,
    cache: &GridCache,
) -> Result<ChannelTable> {
    build(source, rho_grid, count, opts, Some(cache))
}

fn build(
    source: &ChannelSource,
    rho_grid: &[f64],
    count: usize,
    opts: &ChannelOptions,
    cache: Option<&GridCache>,
) -> Result<ChannelTable> {
    if rho_grid.len() < 4 || rho_grid.windows(2).any(|w| !(w[1] > w[0])) || !(rho_grid[0] > 0.0) {
        return Err(Error::Config("rho grid must be positive, strictly ascending, with at least 4 points".into()));
    }
    if count == 0 {
        return Err(Error::Config("at least one channel is required".into()));
    }
    match source {
        ChannelSource::ZeroRange { a } => zero_range_table(*a, rho_grid, count, opts),
        ChannelSource::FiniteRange(spec) => finite_range_table(spec, rho_grid, count, opts, cache),
    }
}

fn zero_range_table(a: f64, rho_grid: &[f64], count: usize, opts: &ChannelOptions) -> Result<ChannelTable> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Config(format!("scattering length must be positive, got {a}")));
    }
    if count != 1 {
        return Err(Error::Config("the zero-range table has a single channel".into()));
    }
    let vals: Vec<(f64, f64)> = run(opts.workers, || {
        rho_grid
            .par_iter()
            .map(|&r| {
                let x = r / a;
                let lam = solve_lambda_zero_range(x, 1)?.lambda();
                let q = q11_zero_range(x)? / (a * a);
                Ok((lam, q))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(ChannelTable {
        source: SourceKind::ZeroRange { a },
        rho: rho_grid.to_vec(),
        lambdas: vec![vals.iter().map(|v| v.0).collect()],
        q: vec![vec![vals.iter().map(|v| v.1).collect()]],
        p: vec![vec![vec![0.0; rho_grid.len()]]],
        g: vec![vec![vals.iter().map(|v| -v.1).collect()]],
        threshold: -crate::twobody::weak_binding_energy(a)?.0,
        p_asymmetry: 0.0,
    })
}

fn finite_range_table(
    spec: &PotentialSpec,
    rho_grid: &[f64],
    count: usize,
    opts: &ChannelOptions,
    cache: Option<&GridCache>,
) -> Result<ChannelTable> {
    if spec.is_zero_range() {
        return Err(Error::NotPointwise);
    }
    let compute = |pts: &[f64]| -> Result<Vec<Point>> {
        run(opts.workers, || {
            pts.par_iter().map(|&r| finite_range_point(spec, r, count, opts, cache)).collect::<Result<Vec<_>>>()
        })?
    };
    let mut points = compute(rho_grid)?;

    // make signs consistent along ρ, refining where the overlap is poor
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    let mut pending: std::collections::VecDeque<(Point, usize)> = points.drain(..).map(|p| (p, 0)).collect();
    while let Some((mut next, depth)) = pending.pop_front() {
        let Some(prev) = out.last() else {
            out.push(next);
            continue;
        };
        let ov = overlaps(prev, &next);
        let poor = ov.iter().any(|o| o.abs() < opts.min_overlap);
        if poor {
            if depth >= opts.max_refinements {
                let worst = ov.iter().fold(1.0f64, |m, o| m.min(o.abs()));
                return Err(Error::Tracking { rho: next.rho, overlap: worst });
            }
            let mid = (prev.rho * next.rho).sqrt();
            let inserted = finite_range_point(spec, mid, count, opts, cache)?;
            pending.push_front((next, depth + 1));
            pending.push_front((inserted, depth + 1));
            continue;
        }
        for (n, o) in ov.iter().enumerate() {
            if *o < 0.0 {
                flip(&mut next, n, count);
            }
        }
        out.push(next);
    }

    let mat = |sel: fn(&Point) -> &Vec<f64>| -> Vec<Vec<Vec<f64>>> {
        (0..count)
            .map(|a| (0..count).map(|b| out.iter().map(|pt| sel(pt)[a * count + b]).collect()).collect())
            .collect()
    };
    let table = ChannelTable {
        source: SourceKind::FiniteRange { range: spec.effective_range_scale() },
        rho: out.iter().map(|p| p.rho).collect(),
        lambdas: (0..count).map(|n| out.iter().map(|p| p.lambdas[n]).collect()).collect(),
        q: mat(|p| &p.q),
        p: mat(|p| &p.p),
        g: mat(|p| &p.g),
        threshold: pair_threshold(spec)?,
        p_asymmetry: out.iter().map(|p| p.p_asymmetry).fold(0.0, f64::max),
    };
    Ok(table)
}
