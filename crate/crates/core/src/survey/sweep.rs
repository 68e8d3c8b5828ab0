//! Strength sweeps over gaussian pair potentials and the Borromean scan.

use crate::channels::{build_channel_table_cached, solve_bound_states, ChannelOptions, ChannelSource, GridCache};
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::twobody;
use rayon::prelude::*;
use serde::Serialize;

/// Shape class of V(r) = [S1·e^{−r²/2b²} + S2·e^{−2r²/b²}]/(2b²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// S1 ≤ 0, S2 ≤ 0; S1 is swept.
    PureAttractive,
    /// S1 < 0 with a narrow repulsive core S2 > 0; S1 is swept.
    RepulsiveCore,
    /// Narrow attraction S2 < 0 inside a wide barrier S1 > 0; S2 is swept.
    RepulsiveBarrier,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pure_attractive" => Ok(Family::PureAttractive),
            "repulsive_core" => Ok(Family::RepulsiveCore),
            "repulsive_barrier" => Ok(Family::RepulsiveBarrier),
            _ => Err(Error::Config(format!("unknown family {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PureAttractive => "pure_attractive",
            Family::RepulsiveCore => "repulsive_core",
            Family::RepulsiveBarrier => "repulsive_barrier",
        }
    }

    /// (S1, S2) for a swept strength `s` and the fixed one.
    pub fn strengths(self, fixed: f64, s: f64) -> (f64, f64) {
        match self {
            Family::PureAttractive | Family::RepulsiveCore => (s, fixed),
            Family::RepulsiveBarrier => (fixed, s),
        }
    }

    /// Whether (S1, S2) belongs to this shape class.
    pub fn admits(self, s1: f64, s2: f64) -> bool {
        match self {
            Family::PureAttractive => s1 <= 0.0 && s2 <= 0.0,
            Family::RepulsiveCore => s1 < 0.0 && s2 > 0.0,
            Family::RepulsiveBarrier => s1 > 0.0 && s2 < 0.0,
        }
    }

    fn check(self, s1: f64, s2: f64) -> Result<()> {
        if self.admits(s1, s2) {
            Ok(())
        } else {
            Err(Error::Config(format!("S1 = {s1}, S2 = {s2} is not in the {} family", self.name())))
        }
    }
}

/// Hyperradial grid of a sweep point, in units of b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub rho_min: f64,
    pub per_decade: usize,
    /// ρ_max = reach/√|E2| when a pair is bound.
    pub reach: f64,
    /// Smallest ρ_max, and the one used without a bound pair.
    pub rho_max_floor: f64,
    pub rho_max_cap: f64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid { rho_min: 1e-2, per_decade: 30, reach: 100.0, rho_max_floor: 30.0, rho_max_cap: 1e6 }
    }
}

impl SweepGrid {
    /// Points 10^{k/per_decade}·b covering [rho_min, ρ_max]. Grids of
    /// different points share nodes, so angular grids are reused.
    pub fn points(&self, b: f64, e2: Option<f64>) -> Vec<f64> {
        let top = match e2 {
            Some(e) if e < 0.0 => (self.reach / (-e * b * b).sqrt()).clamp(self.rho_max_floor, self.rho_max_cap),
            _ => self.rho_max_floor,
        };
        let pd = self.per_decade as f64;
        let k0 = (pd * self.rho_min.log10()).floor() as i64;
        let k1 = (pd * top.log10()).ceil() as i64;
        (k0..=k1).map(|k| b * 10f64.powf(k as f64 / pd)).collect()
    }
}

/// Three-body levels of one potential.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub s1: f64,
    pub s2: f64,
    /// Lowest pair energy, None without a bound pair.
    pub e2: Option<f64>,
    /// Three-body energies below min(E2, 0), ascending.
    pub e3: Vec<f64>,
}

impl PointResult {
    /// (E3 − E2)/E2 for each level, when a pair is bound.
    pub fn ratios(&self) -> Vec<Option<f64>> {
        self.e3.iter().map(|e| self.e2.map(|e2| (e - e2) / e2)).collect()
    }
}

/// Lowest bound pair energy, if any.
pub fn pair_energy(spec: &PotentialSpec) -> Result<Option<f64>> {
    if spec.is_nonattractive() {
        return Ok(None);
    }
    Ok(twobody::bound_states(spec, twobody::default_e_min(spec))?.first().copied())
}

/// Three-body levels with `channels` adiabatic channels.
pub fn three_body_point(
    b: f64,
    s1: f64,
    s2: f64,
    channels: usize,
    grid: &SweepGrid,
    opts: &ChannelOptions,
    cache: &GridCache,
) -> Result<PointResult> {
    let spec = PotentialSpec::gaussian_pair(b, s1, s2)?;
    let e2 = pair_energy(&spec)?;
    if spec.is_nonattractive() {
        // H ≥ 0: nothing is bound
        return Ok(PointResult { s1, s2, e2, e3: Vec::new() });
    }
    let rho = grid.points(b, e2);
    let table = build_channel_table_cached(&ChannelSource::FiniteRange(spec.clone()), &rho, channels, opts, cache)?;
    // Σ V_ij ≥ 3 min V bounds every level from below
    let floor = 3.0 * twobody::default_e_min(&spec);
    let e3 = solve_bound_states(&table, (floor, 0.0))?.into_iter().map(|s| s.e3).collect();
    Ok(PointResult { s1, s2, e2, e3 })
}

/// Swept strength giving |E2| = target, by bracketing then regula falsi
/// on ln|E2|. Returns the strength and the pair energy found.
pub fn strength_for_target(family: Family, b: f64, fixed: f64, target: f64, tolerance: f64) -> Result<(f64, f64)> {
    if !(target > 0.0) {
        return Err(Error::Config(format!("target |E2| must be positive, got {target}")));
    }
    // ln|E2| − ln target, −∞ without a bound pair
    let eval = |s: f64| -> Result<(f64, Option<f64>)> {
        let (s1, s2) = family.strengths(fixed, s);
        let e2 = pair_energy(&PotentialSpec::gaussian_pair(b, s1, s2)?)?;
        Ok((e2.map_or(f64::NEG_INFINITY, |e| (-e * b * b).ln() - target.ln()), e2))
    };
    // deeper swept strength binds more strongly
    let (mut weak, mut fw) = (0.0, f64::NEG_INFINITY);
    let mut strong = -0.05;
    let mut fs = eval(strong)?.0;
    let mut tries = 0;
    while fs < 0.0 {
        (weak, fw) = (strong, fs);
        strong *= 2.0;
        fs = eval(strong)?.0;
        tries += 1;
        if tries > 20 {
            return Err(Error::numerical("strength search", format!("no strength reaches |E2| = {target}")));
        }
    }
    let mut side = 0i8;
    for _ in 0..200 {
        let mid = if fw.is_finite() {
            let m = strong - fs * (strong - weak) / (fs - fw);
            if (m - weak) * (m - strong) < 0.0 { m } else { 0.5 * (weak + strong) }
        } else {
            0.5 * (weak + strong)
        };
        let (fm, e2) = eval(mid)?;
        if fm.abs() < tolerance {
            return Ok((mid, e2.unwrap_or(0.0)));
        }
        if fm < 0.0 {
            (weak, fw) = (mid, fm);
            if side == -1 && fs.is_finite() {
                fs *= 0.5;
            }
            side = -1;
        } else {
            (strong, fs) = (mid, fm);
            if side == 1 && fw.is_finite() {
                fw *= 0.5;
            }
            side = 1;
        }
        if (strong - weak).abs() < 1e-14 * strong.abs() {
            break;
        }
    }
    Err(Error::numerical("strength search", format!("|E2| = {target} not reached to tolerance {tolerance}")))
}

/// Settings of a Fig.-2 style sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub b: f64,
    /// The strength that is not swept.
    pub fixed: f64,
    /// Target |E2| values (units 1/b²); each is turned into a strength.
    pub targets: Vec<f64>,
    /// Explicit swept strengths, used as given.
    pub strengths: Vec<f64>,
    pub channels: usize,
    pub grid: SweepGrid,
    /// Accepted |ln|E2| − ln target|.
    pub target_tolerance: f64,
    pub channel_options: ChannelOptions,
}

impl SweepConfig {
    pub fn new(family: Family, fixed: f64, targets: Vec<f64>) -> Self {
        SweepConfig {
            family,
            b: 1.0,
            fixed,
            targets,
            strengths: Vec::new(),
            channels: 1,
            grid: SweepGrid::default(),
            target_tolerance: 1e-4,
            channel_options: ChannelOptions::default(),
        }
    }
}

/// One point per target and per explicit strength, in input order.
pub fn fig2_sweep(cfg: &SweepConfig, cache: &GridCache) -> Result<Vec<PointResult>> {
    if cfg.targets.is_empty() && cfg.strengths.is_empty() {
        return Err(Error::Config("sweep needs targets or strengths".into()));
    }
    let mut swept = Vec::with_capacity(cfg.targets.len() + cfg.strengths.len());
    for &t in &cfg.targets {
        swept.push(strength_for_target(cfg.family, cfg.b, cfg.fixed, t, cfg.target_tolerance)?.0);
    }
    swept.extend(&cfg.strengths);
    for &s in &swept {
        let (s1, s2) = cfg.family.strengths(cfg.fixed, s);
        cfg.family.check(s1, s2)?;
    }
    swept
        .par_iter()
        .map(|&s| {
            let (s1, s2) = cfg.family.strengths(cfg.fixed, s);
            three_body_point(cfg.b, s1, s2, cfg.channels, &cfg.grid, &cfg.channel_options, cache)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellLabel {
    /// Bound pair and a three-body level below it.
    DimerTrimer,
    /// Bound pair but no three-body level below it.
    DimerOnly,
    /// No bound pair, yet E3 < 0.
    Borromean,
    Unbound,
}

impl CellLabel {
    pub fn name(self) -> &'static str {
        match self {
            CellLabel::DimerTrimer => "dimer+trimer",
            CellLabel::DimerOnly => "dimer_only",
            CellLabel::Borromean => "borromean",
            CellLabel::Unbound => "unbound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub point: PointResult,
    pub label: CellLabel,
}

/// Label every (S1, S2) pair of the grid.
pub fn borromean_scan(
    family: Family,
    b: f64,
    s1: &[f64],
    s2: &[f64],
    channels: usize,
    grid: &SweepGrid,
    opts: &ChannelOptions,
    cache: &GridCache,
) -> Result<Vec<Cell>> {
    let pairs: Vec<(f64, f64)> = s1.iter().flat_map(|&a| s2.iter().map(move |&c| (a, c))).collect();
    for &(a, c) in &pairs {
        // the free cell belongs to every family
        if !(a == 0.0 && c == 0.0) {
            family.check(a, c)?;
        }
    }
    pairs
        .par_iter()
        .map(|&(a, c)| {
            let point = three_body_point(b, a, c, channels, grid, opts, cache)?;
            let label = match (point.e2, point.e3.is_empty()) {
                (Some(_), false) => CellLabel::DimerTrimer,
                (Some(_), true) => CellLabel::DimerOnly,
                (None, false) => CellLabel::Borromean,
                (None, true) => CellLabel::Unbound,
            };
            Ok(Cell { point, label })
        })
        .collect()
}

/// For each S1 row, the S2 interval covered by Borromean cells.
pub fn borromean_window(cells: &[Cell]) -> Vec<(f64, f64, f64)> {
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for c in cells.iter().filter(|c| c.label == CellLabel::Borromean) {
        let (s1, s2) = (c.point.s1, c.point.s2);
        match rows.iter_mut().find(|r| r.0 == s1) {
            Some(r) => {
                r.1 = r.1.min(s2);
                r.2 = r.2.max(s2);
            }
            None => rows.push((s1, s2, s2)),
        }
    }
    rows
}
