//! Channel tables and three-body bound states.

use halo2d::channels::*;
use halo2d::{Error, PotentialSpec};
use std::sync::OnceLock;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn zero_range() -> &'static ChannelTable {
    static T: OnceLock<ChannelTable> = OnceLock::new();
    T.get_or_init(|| {
        let grid = log_grid(1e-8, 1e3, 30);
        build_channel_table(&ChannelSource::ZeroRange { a: 1.0 }, &grid, 1, &ChannelOptions::default()).unwrap()
    })
}

fn zero_range_states() -> &'static Vec<ThreeBodyState> {
    static S: OnceLock<Vec<ThreeBodyState>> = OnceLock::new();
    S.get_or_init(|| solve_bound_states(zero_range(), (-1e3, 0.0)).unwrap())
}

/// Deep gaussian pair, five channels; lower channel counts come from truncation.
fn gaussian() -> &'static ChannelTable {
    static T: OnceLock<ChannelTable> = OnceLock::new();
    T.get_or_init(|| {
        let spec = PotentialSpec::gaussian_pair(1.0, -2.0, 0.0).unwrap();
        let grid = log_grid(1e-2, 300.0, 30);
        build_channel_table(&ChannelSource::FiniteRange(spec), &grid, 5, &ChannelOptions::default()).unwrap()
    })
}

fn value_at(table: &ChannelTable, row: &[f64], rho: f64) -> f64 {
    let j = table.rho.iter().position(|&r| r >= rho).unwrap();
    row[j]
}

#[test]
fn zero_range_q11_follows_the_inverse_square_law() {
    let t = zero_range();
    for (j, &r) in t.rho.iter().enumerate().filter(|(_, &r)| r >= 50.0) {
        assert!((t.q[0][0][j] * r * r + 1.0 / 3.0).abs() < 1e-3, "rho {r}: {}", t.q[0][0][j] * r * r);
        assert_eq!(t.p[0][0][j], 0.0);
    }
}

#[test]
fn zero_range_effective_potential_limits() {
    let t = zero_range();
    let u = effective_potential(t, 1).unwrap();
    let c = -8.0 * (-2.0 * EULER_GAMMA).exp();
    assert!((c + 2.521894).abs() < 1e-6);
    let r = value_at(t, &t.rho, 100.0);
    let target = -0.25 / (r * r) + c;
    let got = value_at(t, &u, 100.0);
    assert!(((got - target) / target).abs() < 1e-2, "{got} vs {target}");
    // centrifugal repulsion near the origin; λ₁ → 0 only logarithmically,
    // so U turns positive below ρ ≈ 8·10⁻⁴a
    for (j, &r) in t.rho.iter().enumerate().filter(|(_, &r)| r <= 1e-4) {
        assert!(u[j] > 0.0, "rho {r}");
    }
    assert!(value_at(t, &u, 1e-2) < 0.0);
    assert!(matches!(effective_potential(t, 2), Err(Error::Config(_))));
}

#[test]
fn zero_range_spectrum_ratios_and_radii() {
    let t = zero_range();
    let s = zero_range_states();
    assert_eq!(s.len(), 2);
    let ratios: Vec<f64> = s.iter().map(|x| x.e3 / t.threshold).collect();
    assert!((ratios[0] / 16.52 - 1.0).abs() < 1e-2, "{ratios:?}");
    assert!((ratios[1] / 1.267 - 1.0).abs() < 5e-3, "{ratios:?}");
    assert_eq!(s[0].nodes, 0);
    assert_eq!(s[1].nodes, 1);
    let radii: Vec<f64> = s.iter().map(|x| rms_radius(x).unwrap()).collect();
    assert!((radii[0] / 0.111 - 1.0).abs() < 3e-2, "{radii:?}");
    assert!((radii[1] / 0.927 - 1.0).abs() < 3e-2, "{radii:?}");
    for x in s {
        let r = rms_hyperradius(x).unwrap();
        assert!((r / x.rms_rho - 1.0).abs() < 1e-4, "{r} vs {}", x.rms_rho);
    }
}

#[test]
fn zero_range_has_two_nodes_out_to_large_distance() {
    let t = zero_range();
    assert_eq!(count_zero_energy_nodes(t, 1e3).unwrap(), 2);
    assert_eq!(count_zero_energy_nodes(t, 10.0).unwrap(), 2);
}

#[test]
fn window_without_states_is_empty() {
    let t = zero_range();
    let s = solve_bound_states(t, (-1.0e3, -1.0e2)).unwrap();
    assert!(s.is_empty());
}

#[test]
fn shallow_state_decays_with_the_dimer_spectator_rate() {
    let t = zero_range();
    let s = &zero_range_states()[1];
    let kappa = (2.0 * (s.e3 - t.threshold).abs()).sqrt();
    let f = &s.f[0];
    let at = |r: f64| s.rho.iter().position(|&x| x >= r).unwrap();
    let (i, k) = (at(15.0), at(25.0));
    let slope = (f[k].abs().ln() - f[i].abs().ln()) / (s.rho[k] - s.rho[i]);
    assert!((slope / -kappa - 1.0).abs() < 1e-2, "slope {slope} vs {}", -kappa);
}

#[test]
fn free_table_is_constant_and_uncoupled() {
    let spec = PotentialSpec::gaussian_pair(1.0, 0.0, 0.0).unwrap();
    let grid = log_grid(0.1, 100.0, 5);
    let t = build_channel_table(&ChannelSource::FiniteRange(spec), &grid, 3, &ChannelOptions::default()).unwrap();
    assert_eq!(t.threshold, 0.0);
    for (n, want) in [0.0, 24.0, 48.0].iter().enumerate() {
        assert!(t.lambdas[n].iter().all(|l| (l - want).abs() < 1e-6), "{:?}", t.lambdas[n]);
    }
    for a in 0..3 {
        for b in 0..3 {
            assert!(t.p[a][b].iter().chain(&t.q[a][b]).all(|x| x.abs() < 1e-6));
        }
    }
    let u = effective_potential(&t, 1).unwrap();
    for (j, &r) in t.rho.iter().enumerate() {
        assert!((u[j] * r * r - 0.75).abs() < 1e-6);
    }
    assert!(solve_bound_states(&t, (-10.0, 0.0)).unwrap().is_empty());
    assert_eq!(count_zero_energy_nodes(&t, 100.0).unwrap(), 0);
}

#[test]
fn gaussian_couplings_are_antisymmetric() {
    let t = gaussian();
    assert!(t.p_asymmetry < 1e-6, "raw asymmetry {}", t.p_asymmetry);
    for a in 0..t.channels() {
        assert!(t.p[a][a].iter().all(|&x| x == 0.0));
        for b in 0..t.channels() {
            for j in 0..t.len() {
                assert_eq!(t.p[a][b][j], -t.p[b][a][j]);
            }
        }
    }
    // channels stay ordered and continuous
    for j in 0..t.len() {
        for n in 1..t.channels() {
            assert!(t.lambdas[n][j] > t.lambdas[n - 1][j]);
        }
    }
}

#[test]
fn gaussian_spectrum_converges_in_channel_count() {
    let t = gaussian();
    let e3 = gaussian_states(3);
    let e5 = gaussian_states(5);
    assert_eq!(e3.len(), e5.len());
    assert!(!e3.is_empty());
    for (a, b) in e3.iter().zip(&e5) {
        assert!((a.e3 / b.e3 - 1.0).abs() < 5e-3, "{} vs {}", a.e3, b.e3);
    }
    // threshold contract and ordering
    for (i, s) in e5.iter().enumerate() {
        assert!(s.e3 < t.threshold.min(0.0));
        assert_eq!(s.nodes, i);
        let norm: f64 = s.f.iter().map(|f| {
            (1..f.len()).map(|j| 0.5 * (s.rho[j] - s.rho[j - 1]) * (f[j] * f[j] + f[j - 1] * f[j - 1])).sum::<f64>()
        }).sum();
        assert!((norm - 1.0).abs() < 1e-4, "norm {norm}");
    }
    for w in e5.windows(2) {
        assert!(w[0].e3 < w[1].e3);
    }
}

fn gaussian_states(n: usize) -> Vec<ThreeBodyState> {
    solve_bound_states(&gaussian().truncated(n), (-100.0, 0.0)).unwrap()
}

fn gaussian_profile(rho0: f64, width: f64, scale: f64) -> ThreeBodyState {
    let rho: Vec<f64> = (0..=40_000).map(|i| rho0 * (0.5f64).powf(1.0 - i as f64 / 20_000.0)).collect();
    let raw: Vec<f64> = rho.iter().map(|r| (-((r - rho0) / width).powi(2) / 2.0).exp()).collect();
    let c = (width * std::f64::consts::PI.sqrt()).sqrt();
    ThreeBodyState {
        e3: -1.0,
        nodes: 0,
        rho,
        f: vec![raw.iter().map(|v| scale * v / c).collect()],
        rms_rho: f64::NAN,
    }
}

#[test]
fn narrow_profile_sits_at_its_centre() {
    let s = gaussian_profile(3.0, 0.01, 1.0);
    let r = rms_hyperradius(&s).unwrap();
    assert!((r - 3.0).abs() < 1e-4, "{r}");
    assert!((rms_radius(&s).unwrap() - 3.0 / 3f64.sqrt()).abs() < 1e-4);
}

#[test]
fn unnormalized_state_is_rejected() {
    let s = gaussian_profile(3.0, 0.01, 1.1);
    assert!(matches!(rms_hyperradius(&s), Err(Error::Contract(_))));
}

#[test]
fn bad_grids_and_channel_counts_are_config_errors() {
    let src = ChannelSource::ZeroRange { a: 1.0 };
    let o = ChannelOptions::default();
    assert!(matches!(build_channel_table(&src, &[1.0, 2.0], 1, &o), Err(Error::Config(_))));
    assert!(matches!(build_channel_table(&src, &log_grid(1.0, 10.0, 5), 0, &o), Err(Error::Config(_))));
    assert!(matches!(build_channel_table(&src, &log_grid(1.0, 10.0, 5), 2, &o), Err(Error::Config(_))));
}

