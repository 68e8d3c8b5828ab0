//! The CLI subcommands as functions from a configuration to output files.

use super::config::{Config, POTENTIAL_KEYS};
use super::output::{csv, json, Artifact, Cell, Meta, UNITS};
use super::sweep::{self, Family, SweepConfig, SweepGrid};
use crate::angular::{solve_angular, AngularGrid, DEFAULT_BETA, DEFAULT_NODES};
use crate::channels::{
    build_channel_table, build_channel_table_cached, count_zero_energy_nodes_with, effective_potential, log_grid,
    rms_hyperradius, rms_radius, solve_bound_states, ChannelOptions, ChannelSource, ChannelTable, GridCache,
    RadialOptions, ThreeBodyState,
};
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::special::EULER_GAMMA;
use crate::twobody;
use crate::zero_range::{efimov3d_lowest, solve_lambda_zero_range};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    TwoBody,
    AngularScan,
    ZeroRangeLambda,
    Efimov3d,
    Fig1,
    Spectrum,
    Fig2Sweep,
    BorromeanScan,
    NoThirdState,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::TwoBody,
        Command::AngularScan,
        Command::ZeroRangeLambda,
        Command::Efimov3d,
        Command::Fig1,
        Command::Spectrum,
        Command::Fig2Sweep,
        Command::BorromeanScan,
        Command::NoThirdState,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::TwoBody => "two-body",
            Command::AngularScan => "angular-scan",
            Command::ZeroRangeLambda => "zero-range-lambda",
            Command::Efimov3d => "efimov3d",
            Command::Fig1 => "fig1",
            Command::Spectrum => "spectrum",
            Command::Fig2Sweep => "fig2-sweep",
            Command::BorromeanScan => "borromean-scan",
            Command::NoThirdState => "no-third-state",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown command {s:?}")))
    }
}

/// Run `command` on `cfg`, returning the files to write.
pub fn run(command: Command, cfg: &Config) -> Result<Vec<Artifact>> {
    match command {
        Command::TwoBody => two_body(cfg),
        Command::AngularScan => angular_scan(cfg),
        Command::ZeroRangeLambda => zero_range_lambda(cfg),
        Command::Efimov3d => efimov3d(cfg),
        Command::Fig1 => fig1(cfg),
        Command::Spectrum => spectrum(cfg),
        Command::Fig2Sweep => fig2_sweep(cfg),
        Command::BorromeanScan => borromean_scan(cfg),
        Command::NoThirdState => no_third_state(cfg),
    }
}

fn allowed<'a>(extra: &[&'a str], potential: bool) -> Vec<&'a str> {
    let mut v: Vec<&str> = extra.to_vec();
    if potential {
        v.extend_from_slice(POTENTIAL_KEYS);
    }
    v
}

fn meta(command: Command, cfg: &Config) -> Meta {
    Meta::new(command.name(), cfg.sha256(), UNITS)
}

fn channel_options(cfg: &Config) -> Result<ChannelOptions> {
    Ok(ChannelOptions {
        nodes: cfg.usize_or("grid.nodes", DEFAULT_NODES)?,
        beta: cfg.usize_or("grid.beta", DEFAULT_BETA)?,
        ..ChannelOptions::default()
    })
}

/// Explicit `rho.values`, or `rho.points` log-spaced values in [rho.min, rho.max].
fn rho_values(cfg: &Config, default: (f64, f64, usize)) -> Result<Vec<f64>> {
    if let Some(v) = cfg.list("rho.values")? {
        return Ok(v);
    }
    let lo = cfg.f64_or("rho.min", default.0)?;
    let hi = cfg.f64_or("rho.max", default.1)?;
    let n = cfg.usize_or("rho.points", default.2)?;
    if !(lo > 0.0 && hi > lo) || n < 2 {
        return Err(Error::Config("need 0 < rho.min < rho.max and rho.points >= 2".into()));
    }
    Ok((0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect())
}

const GRID_KEYS: &[&str] = &["grid.nodes", "grid.beta"];
const RHO_KEYS: &[&str] = &["rho.values", "rho.min", "rho.max", "rho.points"];

#[derive(Serialize)]
struct TwoBodyOut {
    a: Option<f64>,
    bound_energies: Vec<f64>,
    k: Option<f64>,
    interior_nodes: usize,
    /// k·a·e^γ/2, one in the weak-binding limit.
    weak_binding_product: Option<f64>,
}

fn two_body(cfg: &Config) -> Result<Vec<Artifact>> {
    cfg.check_keys(&allowed(&["e_min"], true))?;
    let spec = cfg.potential()?;
    let e_min = cfg.f64_or("e_min", twobody::default_e_min(&spec))?;
    let out = match spec {
        PotentialSpec::ZeroRange { a } => {
            let (k, b) = twobody::weak_binding_energy(a)?;
            TwoBodyOut { a: Some(a), bound_energies: vec![-b], k: Some(k), interior_nodes: 0, weak_binding_product: Some(1.0) }
        }
        _ => {
            let s = twobody::solve(&spec, e_min)?;
            let product = match (s.a, s.k) {
                (Some(a), Some(k)) => Some(k * a * EULER_GAMMA.exp() / 2.0),
                _ => None,
            };
            TwoBodyOut { a: s.a, bound_energies: s.bound_energies, k: s.k, interior_nodes: s.interior_nodes, weak_binding_product: product }
        }
    };
    Ok(vec![Artifact { name: "two-body.json".into(), contents: json(&meta(Command::TwoBody, cfg), &out) }])
}

fn angular_scan(cfg: &Config) -> Result<Vec<Artifact>> {
    let mut keys = allowed(&["channels"], true);
    keys.extend_from_slice(GRID_KEYS);
    keys.extend_from_slice(RHO_KEYS);
    cfg.check_keys(&keys)?;
    let spec = cfg.potential()?;
    let n = cfg.usize_or("channels", 3)?.max(1);
    let opts = channel_options(cfg)?;
    let rhos = rho_values(cfg, (0.1, 100.0, 31))?;
    let range = spec.effective_range_scale();
    let rows: Vec<Vec<Cell>> = rhos
        .par_iter()
        .map(|&rho| {
            let grid = AngularGrid::for_range(range, rho, opts.nodes, opts.beta)?;
            // one extra mode so the spurious cos 2α can be dropped
            let sp = solve_angular(&spec, rho, &grid, n + 1)?;
            let mut row = vec![Cell::from(rho)];
            row.extend(sp.lambdas.iter().zip(&sp.spurious).filter(|(_, s)| !**s).take(n).map(|(l, _)| Cell::from(*l)));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let cols: Vec<String> = std::iter::once("rho".to_string()).chain((1..=n).map(|i| format!("lambda_{i}"))).collect();
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let note = [("note", "physical channels only; the spurious mode cos 2a (lambda = 8) is omitted".to_string())];
    Ok(vec![Artifact { name: "angular-scan.csv".into(), contents: csv(&meta(Command::AngularScan, cfg), &note, &cols, &rows) }])
}

fn zero_range_lambda(cfg: &Config) -> Result<Vec<Artifact>> {
    let mut keys = vec!["channels"];
    keys.extend_from_slice(RHO_KEYS);
    cfg.check_keys(&keys)?;
    let n = cfg.usize_or("channels", 3)?.max(1);
    let xs = rho_values(cfg, (0.01, 100.0, 41))?;
    let rows: Vec<Vec<Cell>> = xs
        .par_iter()
        .map(|&x| {
            let mut row = vec![Cell::from(x)];
            for k in 1..=n {
                row.push(solve_lambda_zero_range(x, k)?.lambda().into());
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let cols: Vec<String> = std::iter::once("rho_over_a".to_string()).chain((1..=n).map(|i| format!("lambda_{i}"))).collect();
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    Ok(vec![Artifact { name: "zero-range-lambda.csv".into(), contents: csv(&meta(Command::ZeroRangeLambda, cfg), &[], &cols, &rows) }])
}

fn efimov3d(cfg: &Config) -> Result<Vec<Artifact>> {
    cfg.check_keys(RHO_KEYS)?;
    let xs = match cfg.list("rho.values")? {
        Some(v) => v,
        None if cfg.str("rho.min").is_some() => rho_values(cfg, (0.01, 100.0, 41))?,
        None => vec![0.0, 0.01, 0.1, 0.3, 1.0, 3.0, 10.0, 100.0],
    };
    let rows: Vec<Vec<Cell>> = xs
        .iter()
        .map(|&x| Ok(vec![x.into(), efimov3d_lowest(x)?.into()]))
        .collect::<Result<_>>()?;
    Ok(vec![Artifact { name: "efimov3d.csv".into(), contents: csv(&meta(Command::Efimov3d, cfg), &[], &["rho_over_a", "lambda"], &rows) }])
}

/// Table and levels for a potential, zero range or finite.
struct Solved {
    table: ChannelTable,
    states: Vec<ThreeBodyState>,
    /// Length unit of reported radii: a when known, else the range.
    unit: f64,
    unit_name: &'static str,
}

const TABLE_KEYS: &[&str] = &["channels", "table.rho_min", "table.rho_max", "table.per_decade", "table.reach"];

fn solve_potential(spec: &PotentialSpec, cfg: &Config, channels: usize) -> Result<Solved> {
    match spec {
        PotentialSpec::ZeroRange { a } => {
            let grid = log_grid(
                cfg.f64_or("table.rho_min", 1e-8)? * a,
                cfg.f64_or("table.rho_max", 1e3)? * a,
                cfg.usize_or("table.per_decade", 30)?,
            );
            let table = build_channel_table(&ChannelSource::ZeroRange { a: *a }, &grid, 1, &ChannelOptions::default())?;
            let states = solve_bound_states(&table, (-1e3 / (a * a), 0.0))?;
            Ok(Solved { table, states, unit: *a, unit_name: "a" })
        }
        _ => {
            let range = spec.effective_range_scale();
            let e2 = sweep::pair_energy(spec)?;
            let g = SweepGrid {
                rho_min: cfg.f64_or("table.rho_min", 1e-2)?,
                per_decade: cfg.usize_or("table.per_decade", 30)?,
                reach: cfg.f64_or("table.reach", 100.0)?,
                rho_max_floor: cfg.f64_or("table.rho_max", 30.0)?,
                ..SweepGrid::default()
            };
            let grid = g.points(range, e2);
            let table = build_channel_table(&ChannelSource::FiniteRange(spec.clone()), &grid, channels, &channel_options(cfg)?)?;
            let floor = 3.0 * twobody::default_e_min(spec);
            let states = if spec.is_nonattractive() { Vec::new() } else { solve_bound_states(&table, (floor, 0.0))? };
            let a = match twobody::scattering_length(spec) {
                Ok(s) => Some(s.a),
                Err(Error::ScatteringLengthUndefined(_)) => None,
                Err(e) => return Err(e),
            };
            Ok(match a {
                Some(a) => Solved { table, states, unit: a, unit_name: "a" },
                None => Solved { table, states, unit: range, unit_name: "range" },
            })
        }
    }
}

#[derive(Serialize)]
struct StateOut {
    #[serde(rename = "E3")]
    e3: f64,
    nodes: usize,
    /// √⟨ρ²⟩/√3, the rms distance of a particle from the centre of mass.
    rms_over_a: f64,
    /// √⟨ρ²⟩, equal to the rms interparticle distance.
    rms_rho_over_a: f64,
    /// (E3 − E2)/E2, null without a bound pair.
    ratio: Option<f64>,
}

fn states_out(s: &Solved) -> Result<Vec<StateOut>> {
    let e2 = (s.table.threshold < 0.0).then_some(s.table.threshold);
    s.states
        .iter()
        .map(|x| {
            Ok(StateOut {
                e3: x.e3,
                nodes: x.nodes,
                rms_over_a: rms_radius(x)? / s.unit,
                rms_rho_over_a: rms_hyperradius(x)? / s.unit,
                ratio: e2.map(|e2| (x.e3 - e2) / e2),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct SpectrumOut {
    #[serde(rename = "E2")]
    e2: Option<f64>,
    length_unit: &'static str,
    length_unit_value: f64,
    channels: usize,
    states: Vec<StateOut>,
    /// The same levels from the lowest channel alone (finite range only).
    states_single_channel: Option<Vec<StateOut>>,
}

fn spectrum(cfg: &Config) -> Result<Vec<Artifact>> {
    let mut keys = allowed(TABLE_KEYS, true);
    keys.extend_from_slice(GRID_KEYS);
    cfg.check_keys(&keys)?;
    let spec = cfg.potential()?;
    let channels = if spec.is_zero_range() { 1 } else { cfg.usize_or("channels", 3)?.max(1) };
    let solved = solve_potential(&spec, cfg, channels)?;
    let single = if spec.is_zero_range() || spec.is_nonattractive() {
        None
    } else {
        let floor = 3.0 * twobody::default_e_min(&spec);
        let one = solve_bound_states(&solved.table.truncated(1), (floor, 0.0))?;
        Some(states_out(&Solved { table: solved.table.truncated(1), states: one, unit: solved.unit, unit_name: solved.unit_name })?)
    };
    let out = SpectrumOut {
        e2: (solved.table.threshold < 0.0).then_some(solved.table.threshold),
        length_unit: solved.unit_name,
        length_unit_value: solved.unit,
        channels,
        states: states_out(&solved)?,
        states_single_channel: single,
    };
    Ok(vec![Artifact { name: "spectrum.json".into(), contents: json(&meta(Command::Spectrum, cfg), &out) }])
}

/// Linear interpolation of f in ln ρ; zero outside the samples.
fn sample(rho: &[f64], f: &[f64], r: f64) -> f64 {
    if rho.is_empty() || r < rho[0] || r > rho[rho.len() - 1] {
        return 0.0;
    }
    let i = rho.partition_point(|&x| x <= r).clamp(1, rho.len() - 1);
    let t = (r / rho[i - 1]).ln() / (rho[i] / rho[i - 1]).ln();
    f[i - 1] + t * (f[i] - f[i - 1])
}

fn fig1(cfg: &Config) -> Result<Vec<Artifact>> {
    let mut keys = allowed(&["table.rho_min", "table.rho_max", "table.per_decade", "plot.min", "plot.max"], true);
    keys.retain(|k| *k != "potential.b" && *k != "potential.S1" && *k != "potential.S2" && *k != "potential.file");
    cfg.check_keys(&keys)?;
    let spec = cfg.potential()?;
    let PotentialSpec::ZeroRange { a } = spec else {
        return Err(Error::Config("fig1 needs potential.type = zero_range".into()));
    };
    let solved = solve_potential(&spec, cfg, 1)?;
    let (lo, hi) = (cfg.f64_or("plot.min", 1e-6)?, cfg.f64_or("plot.max", 1e2)?);
    let u = effective_potential(&solved.table, 1)?;
    let wave = |k: usize, r: f64| {
        solved.states.get(k).map(|s| sample(&s.rho, &s.f[0], r) * a.sqrt())
    };
    let rows: Vec<Vec<Cell>> = solved
        .table
        .rho
        .iter()
        .zip(&u)
        .filter(|(&r, _)| r >= lo * a && r <= hi * a)
        .map(|(&r, &uv)| vec![(r / a).into(), (uv * a * a).into(), wave(0, r).into(), wave(1, r).into()])
        .collect();
    let e2 = solved.table.threshold;
    let mut extra = vec![("E2_times_a2", format!("{:e}", e2 * a * a))];
    for (i, s) in solved.states.iter().enumerate() {
        extra.push(("state", format!("{i}: E3/E2 = {:.6}, rms/a = {:.5}, rms_rho/a = {:.5}", s.e3 / e2, rms_radius(s)? / a, rms_hyperradius(s)? / a)));
    }
    extra.push(("note", "f normalized to one; f_* times sqrt(a)".into()));
    let contents = csv(&meta(Command::Fig1, cfg), &extra, &["rho_over_a", "U_times_a2", "f_ground", "f_excited"], &rows);
    Ok(vec![Artifact { name: "fig1.csv".into(), contents }])
}

const SWEEP_KEYS: &[&str] = &[
    "family",
    "b",
    "fixed",
    "targets",
    "strengths",
    "channels",
    "target_tolerance",
    "table.rho_min",
    "table.per_decade",
    "table.reach",
    "table.rho_max",
    "table.rho_max_cap",
];

fn sweep_grid(cfg: &Config) -> Result<SweepGrid> {
    let d = SweepGrid::default();
    Ok(SweepGrid {
        rho_min: cfg.f64_or("table.rho_min", d.rho_min)?,
        per_decade: cfg.usize_or("table.per_decade", d.per_decade)?,
        reach: cfg.f64_or("table.reach", d.reach)?,
        rho_max_floor: cfg.f64_or("table.rho_max", d.rho_max_floor)?,
        rho_max_cap: cfg.f64_or("table.rho_max_cap", d.rho_max_cap)?,
    })
}

fn family(cfg: &Config) -> Result<Family> {
    Family::parse(cfg.str("family").ok_or_else(|| Error::Config("missing family".into()))?)
}

fn fig2_sweep(cfg: &Config) -> Result<Vec<Artifact>> {
    let mut keys = SWEEP_KEYS.to_vec();
    keys.extend_from_slice(GRID_KEYS);
    cfg.check_keys(&keys)?;
    let fam = family(cfg)?;
    let default_fixed = match fam {
        Family::PureAttractive => 0.0,
        Family::RepulsiveCore => 4.0,
        Family::RepulsiveBarrier => 10.0,
    };
    let sc = SweepConfig {
        family: fam,
        b: cfg.f64_or("b", 1.0)?,
        fixed: cfg.f64_or("fixed", default_fixed)?,
        targets: cfg.list("targets")?.unwrap_or_default(),
        strengths: cfg.list("strengths")?.unwrap_or_default(),
        channels: cfg.usize_or("channels", 1)?.max(1),
        grid: sweep_grid(cfg)?,
        target_tolerance: cfg.f64_or("target_tolerance", 1e-4)?,
        channel_options: channel_options(cfg)?,
    };
    let points = sweep::fig2_sweep(&sc, &GridCache::new())?;
    let mut rows = Vec::new();
    for p in &points {
        let e2 = Cell::from(p.e2);
        if p.e2.is_none() {
            // kept for the Borromean analysis
            if p.e3.is_empty() {
                rows.push(vec![fam.name().into(), p.s1.into(), p.s2.into(), e2.clone(), Cell::Empty, Cell::Empty, Cell::Empty, "no_dimer".into()]);
            }
        }
        for (i, (e3, r)) in p.e3.iter().zip(p.ratios()).enumerate() {
            let flag = if p.e2.is_some() { "ok" } else { "no_dimer" };
            rows.push(vec![fam.name().into(), p.s1.into(), p.s2.into(), e2.clone(), i.into(), (*e3).into(), r.into(), flag.into()]);
        }
        if p.e2.is_some() && p.e3.is_empty() {
            rows.push(vec![fam.name().into(), p.s1.into(), p.s2.into(), e2.clone(), Cell::Empty, Cell::Empty, Cell::Empty, "no_trimer".into()]);
        }
    }
    let extra = [("channels", sc.channels.to_string()), ("b", format!("{}", sc.b))];
    let contents = csv(&meta(Command::Fig2Sweep, cfg), &extra, &["family", "S1", "S2", "E2", "state_index", "E3", "ratio", "flag"], &rows);
    Ok(vec![Artifact { name: "fig2-sweep.csv".into(), contents }])
}

#[derive(Serialize)]
struct WindowRow {
    #[serde(rename = "S1")]
    s1: f64,
    #[serde(rename = "S2_min")]
    s2_min: f64,
    #[serde(rename = "S2_max")]
    s2_max: f64,
}

#[derive(Serialize)]
struct BorromeanSummary {
    family: Family,
    cells: usize,
    borromean_cells: usize,
    window: Vec<WindowRow>,
}

fn borromean_scan(cfg: &Config) -> Result<Vec<Artifact>> {
    let mut keys = vec!["family", "b", "S1", "S2", "channels", "table.rho_min", "table.per_decade", "table.reach", "table.rho_max", "table.rho_max_cap"];
    keys.extend_from_slice(GRID_KEYS);
    cfg.check_keys(&keys)?;
    let fam = family(cfg)?;
    let s1 = cfg.list("S1")?.ok_or_else(|| Error::Config("missing S1 list".into()))?;
    let s2 = cfg.list("S2")?.ok_or_else(|| Error::Config("missing S2 list".into()))?;
    let mut grid = sweep_grid(cfg)?;
    // bound pairs only need the trimer below them, not its asymptotics
    if cfg.str("table.rho_max_cap").is_none() {
        grid.rho_max_cap = 1e3;
    }
    let cells = sweep::borromean_scan(
        fam,
        cfg.f64_or("b", 1.0)?,
        &s1,
        &s2,
        cfg.usize_or("channels", 1)?.max(1),
        &grid,
        &channel_options(cfg)?,
        &GridCache::new(),
    )?;
    let rows: Vec<Vec<Cell>> = cells
        .iter()
        .map(|c| {
            vec![c.point.s1.into(), c.point.s2.into(), c.point.e2.into(), c.point.e3.first().copied().into(), c.label.name().into()]
        })
        .collect();
    let window: Vec<WindowRow> = sweep::borromean_window(&cells)
        .into_iter()
        .map(|(s1, lo, hi)| WindowRow { s1, s2_min: lo, s2_max: hi })
        .collect();
    let summary = BorromeanSummary {
        family: fam,
        cells: cells.len(),
        borromean_cells: cells.iter().filter(|c| c.label == sweep::CellLabel::Borromean).count(),
        window,
    };
    let m = meta(Command::BorromeanScan, cfg);
    Ok(vec![
        Artifact { name: "borromean-scan.csv".into(), contents: csv(&m, &[], &["S1", "S2", "E2", "E3_ground", "label"], &rows) },
        Artifact { name: "borromean-window.json".into(), contents: json(&m, &summary) },
    ])
}

#[derive(Serialize)]
struct NoThirdOut {
    count: usize,
    rho_max_over_a: f64,
    per_decade: usize,
    /// Count with twice the table density and half the radial step.
    count_refined: usize,
    stable: bool,
}

fn no_third_state(cfg: &Config) -> Result<Vec<Artifact>> {
    cfg.check_keys(&allowed(&["rho_max_over_a", "table.rho_min", "table.per_decade"], true))?;
    let spec = match cfg.str("potential.type") {
        None => PotentialSpec::zero_range(1.0)?,
        Some(_) => cfg.potential()?,
    };
    let x = cfg.f64_or("rho_max_over_a", 1e3)?;
    let pd = cfg.usize_or("table.per_decade", 30)?;
    let count = |pd: usize, du: f64| -> Result<usize> {
        let opts = RadialOptions { du, ..RadialOptions::default() };
        let (table, unit) = match &spec {
            PotentialSpec::ZeroRange { a } => {
                let g = log_grid(cfg.f64_or("table.rho_min", 1e-8)? * a, x * a, pd);
                (build_channel_table(&ChannelSource::ZeroRange { a: *a }, &g, 1, &ChannelOptions::default())?, *a)
            }
            other => {
                let r = other.effective_range_scale();
                let g = log_grid(cfg.f64_or("table.rho_min", 1e-2)? * r, x * r, pd);
                let cache = GridCache::new();
                (build_channel_table_cached(&ChannelSource::FiniteRange(other.clone()), &g, 1, &ChannelOptions::default(), &cache)?, r)
            }
        };
        count_zero_energy_nodes_with(&table, x * unit, &opts)
    };
    let du = RadialOptions::default().du;
    let c1 = count(pd, du)?;
    let c2 = count(2 * pd, du / 2.0)?;
    let out = NoThirdOut { count: c1, rho_max_over_a: x, per_decade: pd, count_refined: c2, stable: c1 == c2 };
    Ok(vec![Artifact { name: "no-third-state.json".into(), contents: json(&meta(Command::NoThirdState, cfg), &out) }])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(Command::parse(c.name()).unwrap(), c);
        }
        assert!(Command::parse("fig3").is_err());
    }

    #[test]
    fn sampling_is_linear_in_log_rho() {
        let r = [1.0, 10.0];
        let f = [0.0, 1.0];
        assert!((sample(&r, &f, 10f64.sqrt()) - 0.5).abs() < 1e-14);
        assert_eq!(sample(&r, &f, 20.0), 0.0);
    }
}
