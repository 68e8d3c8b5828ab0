//! Two-body s-wave problem in two dimensions.
//!
//! The radial equation −R″ − R′/r + V R = E R is integrated in t = ln r,
//! where it reads R_tt = r²(V − E)R. The regular solution starts flat at
//! small r, and decaying solutions are cut where they are negligible.
//! Profiles are reported in the reduced form u = √r·R.

use crate::error::{Error, Result};
use crate::numerov::{self, Start};
use crate::potential::PotentialSpec;
use crate::special::EULER_GAMMA;
use serde::Serialize;

/// Numerical settings for the two-body solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodyOptions {
    /// Step in ln r.
    pub dt: f64,
    /// Innermost radius in units of the range.
    pub r_min: f64,
    /// Window for the logarithmic fit, in units of the range.
    pub fit_window: (f64, f64),
    /// Relative fit residual allowed inside the window.
    pub fit_tolerance: f64,
    /// Relative energy tolerance of the bisection.
    pub energy_tolerance: f64,
    /// Energies closer to zero than this (in units of 1/range²) are not searched.
    pub threshold_gap: f64,
}

impl Default for TwoBodyOptions {
    fn default() -> Self {
        TwoBodyOptions {
            dt: 2e-3,
            r_min: 1e-6,
            fit_window: (10.0, 20.0),
            fit_tolerance: 1e-7,
            energy_tolerance: 1e-10,
            threshold_gap: 1e-14,
        }
    }
}

/// Sampled reduced zero-energy solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub r: Vec<f64>,
    pub u: Vec<f64>,
}

/// Scattering length with a flag for interior nodes of the zero-energy solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringLength {
    pub a: f64,
    pub interior_nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoBodySolution {
    pub a: Option<f64>,
    /// Number of interior zeros of the zero-energy solution inside the fit window.
    pub interior_nodes: usize,
    pub bound_energies: Vec<f64>,
    pub k: Option<f64>,
}

/// Weak-binding relation: k = 2e^{−γ}/a and B = k².
pub fn weak_binding_energy(a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!(
            "weak-binding relation needs a > 0, got {a}"
        )));
    }
    let k = 2.0 * (-EULER_GAMMA).exp() / a;
    Ok((k * k, k))
}

/// Log-spaced grid with the potential cached.
struct LogGrid {
    t0: f64,
    dt: f64,
    r2: Vec<f64>,
    v: Vec<f64>,
}

impl LogGrid {
    fn new(spec: &PotentialSpec, r_lo: f64, r_hi: f64, dt: f64) -> Self {
        let (t0, t1) = (r_lo.ln(), r_hi.ln());
        let n = ((t1 - t0) / dt).ceil() as usize + 1;
        let dt = (t1 - t0) / (n - 1) as f64;
        let r: Vec<f64> = (0..n).map(|i| (t0 + i as f64 * dt).exp()).collect();
        let v = r.iter().map(|&x| spec.value(x)).collect();
        LogGrid {
            t0,
            dt,
            r2: r.iter().map(|x| x * x).collect(),
            v,
        }
    }

    fn m(&self, e: f64) -> Vec<f64> {
        self.r2
            .iter()
            .zip(&self.v)
            .map(|(r2, v)| r2 * (v - e))
            .collect()
    }

    /// Regular start R ≈ 1 + (V(0) − E)r²/4.
    fn start(&self, e: f64) -> Start {
        let c = 0.25 * (self.v[0] - e);
        Start::Ratio((1.0 + c * self.r2[1]) / (1.0 + c * self.r2[0]))
    }

    fn r(&self, i: usize) -> f64 {
        (self.t0 + i as f64 * self.dt).exp()
    }
}

fn finite_range(spec: &PotentialSpec, what: &str) -> Result<f64> {
    if spec.is_zero_range() {
        return Err(Error::Domain(format!(
            "{what} is analytic for a zero-range potential"
        )));
    }
    Ok(spec.effective_range_scale())
}

/// R on the grid at energy `e`, scaled to R₀ = 1.
fn regular_solution(grid: &LogGrid, e: f64) -> Vec<f64> {
    let m = grid.m(e);
    let sweep = numerov::outward(&m, grid.dt, grid.start(e), m.len());
    let mut y = Vec::with_capacity(m.len());
    let mut cur = 1.0;
    y.push(cur);
    for q in sweep.ratios {
        cur *= q;
        y.push(cur);
    }
    y
}

/// Zero-energy solution u(r) = √r·R(r) on `n_points` equally spaced radii in (0, r_max].
pub fn zero_energy_solution(spec: &PotentialSpec, r_max: f64, n_points: usize) -> Result<Profile> {
    zero_energy_solution_with(spec, r_max, n_points, &TwoBodyOptions::default())
}

pub fn zero_energy_solution_with(
    spec: &PotentialSpec,
    r_max: f64,
    n_points: usize,
    opts: &TwoBodyOptions,
) -> Result<Profile> {
    let range = finite_range(spec, "zero-energy solution")?;
    if r_max < 20.0 * range {
        return Err(Error::Domain(format!(
            "r_max = {r_max} must be at least 20 ranges"
        )));
    }
    if n_points < 2 {
        return Err(Error::Domain("need at least two sample points".into()));
    }
    let grid = LogGrid::new(spec, opts.r_min * range, r_max, opts.dt);
    let big_r = regular_solution(&grid, 0.0);
    if big_r.iter().any(|x| !x.is_finite()) {
        return Err(Error::numerical(
            "zero-energy solution",
            "integration overflowed",
        ));
    }
    let t: Vec<f64> = (0..big_r.len())
        .map(|i| grid.t0 + i as f64 * grid.dt)
        .collect();
    let spline = crate::interp::Spline::new(t, big_r);
    let last = spline.eval(r_max.ln()) * r_max.sqrt();
    let norm = if last != 0.0 { last } else { 1.0 };
    let r: Vec<f64> = (1..=n_points)
        .map(|j| r_max * j as f64 / n_points as f64)
        .collect();
    let u = r
        .iter()
        .map(|&x| spline.eval(x.ln()) * x.sqrt() / norm)
        .collect();
    Ok(Profile { r, u })
}

/// 2D scattering length from the logarithmic asymptote R = C·ln(r/a).
pub fn scattering_length(spec: &PotentialSpec) -> Result<ScatteringLength> {
    scattering_length_with(spec, &TwoBodyOptions::default())
}

pub fn scattering_length_with(
    spec: &PotentialSpec,
    opts: &TwoBodyOptions,
) -> Result<ScatteringLength> {
    if let PotentialSpec::ZeroRange { a } = spec {
        return Ok(ScatteringLength {
            a: *a,
            interior_nodes: 0,
        });
    }
    let range = spec.effective_range_scale();
    let (w0, w1) = opts.fit_window;
    let grid = LogGrid::new(spec, opts.r_min * range, w1 * range, opts.dt);
    let big_r = regular_solution(&grid, 0.0);
    let lo = w0 * range;
    let idx: Vec<usize> = (0..big_r.len())
        .filter(|&i| grid.r(i) >= lo * (1.0 - 1e-12))
        .collect();
    let first = idx[0];
    let interior_nodes = big_r[..first]
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0)
        .count();
    // least squares R = p + q t
    let n = idx.len() as f64;
    let (mut st, mut sr, mut stt, mut str_) = (0.0, 0.0, 0.0, 0.0);
    for &i in &idx {
        let t = grid.t0 + i as f64 * grid.dt;
        st += t;
        sr += big_r[i];
        stt += t * t;
        str_ += t * big_r[i];
    }
    let q = (n * str_ - st * sr) / (n * stt - st * st);
    let p = (sr - q * st) / n;
    let scale = idx.iter().map(|&i| big_r[i].abs()).fold(0.0, f64::max);
    let span = (w1 / w0).ln();
    if (q * span).abs() <= 1e-9 * scale {
        return Err(Error::ScatteringLengthUndefined(
            "zero-energy solution has no logarithmic term".into(),
        ));
    }
    let residual = idx
        .iter()
        .map(|&i| (big_r[i] - p - q * (grid.t0 + i as f64 * grid.dt)).abs())
        .fold(0.0, f64::max)
        / scale;
    if residual > opts.fit_tolerance {
        return Err(Error::RangeWindow {
            residual,
            limit: opts.fit_tolerance,
        });
    }
    Ok(ScatteringLength {
        a: (-p / q).exp(),
        interior_nodes,
    })
}

/// Node count of the regular solution at energy `e` < 0.
fn count_states_below(grid: &LogGrid, e: f64) -> usize {
    let m = grid.m(e);
    let end = numerov::truncation_index(&m, grid.dt, 40.0);
    numerov::outward(&m, grid.dt, grid.start(e), end).nodes
}

fn bisect_level(grid: &LogGrid, level: usize, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_states_below(grid, mid) > level {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo) <= tol * hi.abs() {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::numerical(
        "two-body bisection",
        format!("level {level} did not converge in [{lo}, {hi}]"),
    ))
}

/// All s-wave bound energies in (e_min, 0), ascending.
pub fn bound_states(spec: &PotentialSpec, e_min: f64) -> Result<Vec<f64>> {
    bound_states_with(spec, e_min, &TwoBodyOptions::default())
}

pub fn bound_states_with(
    spec: &PotentialSpec,
    e_min: f64,
    opts: &TwoBodyOptions,
) -> Result<Vec<f64>> {
    if let PotentialSpec::ZeroRange { a } = spec {
        let (b, _) = weak_binding_energy(*a)?;
        return Ok(if -b > e_min { vec![-b] } else { vec![] });
    }
    if !(e_min < 0.0) {
        return Err(Error::Domain(format!(
            "e_min must be negative, got {e_min}"
        )));
    }
    if spec.is_nonattractive() {
        return Ok(vec![]);
    }
    let range = spec.effective_range_scale();
    let e_top = -opts.threshold_gap / (range * range);
    let solve = |dt: f64| -> Result<Vec<f64>> {
        let r_hi = 45.0 / e_top.abs().sqrt();
        let grid = LogGrid::new(spec, opts.r_min * range, r_hi, dt);
        let n_lo = count_states_below(&grid, e_min);
        let n_hi = count_states_below(&grid, e_top);
        (n_lo..n_hi)
            .map(|level| bisect_level(&grid, level, e_min, e_top, opts.energy_tolerance * 1e-3))
            .collect()
    };
    let coarse = solve(opts.dt)?;
    let fine = solve(0.5 * opts.dt)?;
    if coarse.len() != fine.len() {
        return Err(Error::numerical(
            "two-body bound states",
            "state count changed under step halving",
        ));
    }
    for (c, f) in coarse.iter().zip(&fine) {
        let mismatch = ((c - f) / f).abs();
        if mismatch > 1e-6 {
            return Err(Error::numerical(
                "two-body bound states",
                format!("Richardson check failed: {c} vs {f}"),
            ));
        }
    }
    // Numerov is fourth order
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| f + (f - c) / 15.0)
        .collect())
}

/// Scattering length, bound energies and k for one potential.
pub fn solve(spec: &PotentialSpec, e_min: f64) -> Result<TwoBodySolution> {
    let bound_energies = bound_states(spec, e_min)?;
    let (a, interior_nodes) = match scattering_length(spec) {
        Ok(s) => (Some(s.a), s.interior_nodes),
        Err(Error::ScatteringLengthUndefined(_)) => (None, 0),
        Err(e) => return Err(e),
    };
    let k = bound_energies.last().map(|e| (-e).sqrt());
    Ok(TwoBodySolution {
        a,
        interior_nodes,
        bound_energies,
        k,
    })
}

/// Default lower energy bound: below the potential minimum.
pub fn default_e_min(spec: &PotentialSpec) -> f64 {
    match spec {
        PotentialSpec::ZeroRange { a } => -10.0 / (a * a),
        _ => {
            let range = spec.effective_range_scale();
            let min = (0..=4000)
                .map(|i| spec.value(i as f64 * range * 0.0025))
                .fold(0.0, f64::min);
            1.01 * min - 1e-6 / (range * range)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_binding_values() {
        let (b, k) = weak_binding_energy(1.0).unwrap();
        assert!((k - 1.122919).abs() < 1e-6);
        assert!((b - 1.260947).abs() < 1e-6);
        let (b2, _) = weak_binding_energy(2.0).unwrap();
        assert!((b2 - 0.315237).abs() < 1e-6);
        assert!(weak_binding_energy(1e12).unwrap().0 < 1e-23);
        assert!(weak_binding_energy(0.0).is_err());
    }

    #[test]
    fn free_profile() {
        let v = PotentialSpec::gaussian_pair(1.0, 0.0, 0.0).unwrap();
        let p = zero_energy_solution(&v, 40.0, 50).unwrap();
        for (r, u) in p.r.iter().zip(&p.u) {
            assert!((u - (r / 40.0).sqrt()).abs() < 1e-12);
        }
        assert!(matches!(
            scattering_length(&v),
            Err(Error::ScatteringLengthUndefined(_))
        ));
        assert!(bound_states(&v, -1.0).unwrap().is_empty());
    }

    #[test]
    fn repulsive_core_suppresses_interior() {
        let v = PotentialSpec::gaussian_pair(1.0, 0.0, 50.0).unwrap();
        let p = zero_energy_solution(&v, 40.0, 400).unwrap();
        let inner =
            p.r.iter()
                .zip(&p.u)
                .filter(|(r, _)| **r < 0.5)
                .map(|(_, u)| u.abs())
                .fold(0.0, f64::max);
        assert!(inner < 1e-2);
        assert!(bound_states(&v, -1.0).unwrap().is_empty());
    }

    #[test]
    fn zero_range_passthrough() {
        let z = PotentialSpec::zero_range(3.0).unwrap();
        assert_eq!(scattering_length(&z).unwrap().a, 3.0);
        assert!(zero_energy_solution(&z, 100.0, 10).is_err());
    }

    #[test]
    fn reference_energies() {
        let v = PotentialSpec::gaussian_pair(1.0, -4.0, 0.0).unwrap();
        let e = bound_states(&v, -2.5).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e[0] + 0.528475).abs() < 2e-6, "{e:?}");
        let v = PotentialSpec::gaussian_pair(1.0, -1.0, 0.0).unwrap();
        let e = bound_states(&v, -1.0).unwrap();
        assert!((e[0] + 0.0116361).abs() < 1e-6, "{e:?}");
    }

    #[test]
    fn node_count_monotone_in_energy() {
        let v = PotentialSpec::gaussian_pair(1.0, -30.0, 0.0).unwrap();
        let grid = LogGrid::new(&v, 1e-6, 1e4, 2e-3);
        let mut prev = 0;
        for k in 0..60 {
            let e = -15.0 + k as f64 * 0.25;
            let n = count_states_below(&grid, e.min(-1e-6));
            assert!(n >= prev);
            prev = n;
        }
        assert!(prev >= 2);
    }
}
