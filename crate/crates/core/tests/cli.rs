//! The command-line front end, run as a subprocess.

use std::path::Path;
use std::process::{Command, Output};

fn halo2d(dir: &Path, sub: &str, config: &str, extra: &[&str]) -> Output {
    let cfg = dir.join(format!("{sub}.cfg"));
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_halo2d"))
        .arg(sub)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join("out").join(name)).unwrap()
}

/// Data rows of a CSV artifact, header comments dropped.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn free_pair_has_no_bound_energies() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "two-body", "potential.type = gaussian_pair\npotential.S1 = 0\n", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "two-body.json")).unwrap();
    assert_eq!(v["bound_energies"].as_array().unwrap().len(), 0);
    assert_eq!(v["meta"]["units"].as_str().unwrap().contains("hbar = m = 1"), true);
    assert_eq!(v["meta"]["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn efimov_limit_and_worker_independence() {
    let d = tempfile::tempdir().unwrap();
    let cfg = "rho.values = 0, 0.5, 2\n";
    let a = halo2d(d.path(), "efimov3d", cfg, &["--workers", "1"]);
    assert!(a.status.success());
    let first = read(d.path(), "efimov3d.csv");
    let r = rows(&first);
    let l0: f64 = r[0][1].parse().unwrap();
    assert!((l0 / -5.012 - 1.0).abs() < 5e-4, "{l0}");
    let b = halo2d(d.path(), "efimov3d", cfg, &["--workers", "2"]);
    assert!(b.status.success());
    assert_eq!(first, read(d.path(), "efimov3d.csv"));
}

#[test]
fn angular_scan_rows_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let cfg = "potential.type = gaussian_pair\npotential.S1 = -2\nrho.values = 0.5, 3\nchannels = 2\n";
    assert!(halo2d(d.path(), "angular-scan", cfg, &[]).status.success());
    let first = read(d.path(), "angular-scan.csv");
    assert!(halo2d(d.path(), "angular-scan", cfg, &[]).status.success());
    assert_eq!(first, read(d.path(), "angular-scan.csv"));
    let r = rows(&first);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0].len(), 3);
    let l: Vec<f64> = r[1][1..].iter().map(|x| x.parse().unwrap()).collect();
    assert!(l[0] < l[1]);
}

#[test]
fn fig1_potential_shape() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "fig1", "potential.type = zero_range\npotential.a = 1\n", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = read(d.path(), "fig1.csv");
    assert!(text.starts_with("# halo2d"));
    let r = rows(&text);
    let u: Vec<f64> = r.iter().map(|x| x[1].parse().unwrap()).collect();
    assert!(u.iter().cloned().fold(f64::INFINITY, f64::min) < 0.0);
    assert!(u[0] > 0.0, "small-rho limb {}", u[0]);
    let f0: Vec<f64> = r.iter().map(|x| x[2].parse().unwrap()).collect();
    assert!(f0.iter().any(|v| v.abs() > 0.1));
}

#[test]
fn zero_range_spectrum_json() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "spectrum", "potential.type = zero_range\npotential.a = 2\n", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "spectrum.json")).unwrap();
    let e2 = v["E2"].as_f64().unwrap();
    let states = v["states"].as_array().unwrap();
    assert_eq!(states.len(), 2);
    let ratio = states[0]["E3"].as_f64().unwrap() / e2;
    assert!((ratio / 16.52 - 1.0).abs() < 1e-2);
    // radii are reported in units of a, so they do not depend on a
    assert!((states[0]["rms_over_a"].as_f64().unwrap() / 0.111 - 1.0).abs() < 3e-2);
}

#[test]
fn free_no_third_state_count_is_zero() {
    let d = tempfile::tempdir().unwrap();
    let cfg = "potential.type = gaussian_pair\nrho_max_over_a = 10\ntable.per_decade = 8\n";
    let out = halo2d(d.path(), "no-third-state", cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "no-third-state.json")).unwrap();
    assert_eq!(v["count"], 0);
    assert_eq!(v["stable"], true);
}

#[test]
fn zero_range_node_count_inside_ten_a() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "no-third-state", "rho_max_over_a = 10\n", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "no-third-state.json")).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["count_refined"], 2);
}

#[test]
fn configuration_errors_exit_with_two() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "two-body", "potential.type = square\n", &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = halo2d(d.path(), "two-body", "potential.type = zero_range\npotential.a = 1\ntypo = 3\n", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("typo"));
    let missing = Command::new(env!("CARGO_BIN_EXE_halo2d"))
        .args(["two-body", "--config", "/nonexistent/file.cfg"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_three_and_leave_diagnostics() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "zero-range-lambda", "rho.values = 0\n", &[]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "diagnostics.json")).unwrap();
    assert_eq!(v["command"], "zero-range-lambda");
    assert_eq!(v["exit_code"], 3);
}

#[test]
fn pure_attractive_scan_has_no_borromean_cells() {
    let d = tempfile::tempdir().unwrap();
    let cfg = "family = pure_attractive\nS1 = 0, -1\nS2 = 0\ntable.per_decade = 10\n";
    let out = halo2d(d.path(), "borromean-scan", cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "borromean-window.json")).unwrap();
    assert_eq!(v["borromean_cells"], 0);
    let r = rows(&read(d.path(), "borromean-scan.csv"));
    assert_eq!(r[0][4], "unbound");
    assert_eq!(r[1][4], "dimer+trimer");
}

#[test]
fn inconsistent_family_is_a_configuration_error() {
    let d = tempfile::tempdir().unwrap();
    let out = halo2d(d.path(), "fig2-sweep", "family = repulsive_core\nfixed = -1\nstrengths = -2\n", &[]);
    assert_eq!(out.status.code(), Some(2));
}
