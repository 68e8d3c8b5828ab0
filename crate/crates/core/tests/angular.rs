//! Finite-range angular solver against independent constructions.

use faer::{Mat, Side};
use halo2d::angular::{rotated_angle, solve_angular, AngularGrid, DEFAULT_BETA, DEFAULT_NODES};
use halo2d::quad::gauss_legendre;
use halo2d::PotentialSpec;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

/// Legendre polynomials P_0..P_n at x.
fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for k in 1..n {
        let next = ((2 * k + 1) as f64 * x * p[k] - k as f64 * p[k - 1]) / (k + 1) as f64;
        p.push(next);
    }
    p.truncate(n + 1);
    p
}

/// Rayleigh–Ritz in the space Ψ = Σᵢ φ(αᵢ), φ a polynomial in cos 2α. The
/// s-wave Faddeev equation is the Schrödinger equation with each pair
/// potential acting on the s-wave part (in its own pair) of Ψ, so the
/// potential matrix is 3∫V(α)Φₖ(α)Φₗ(α) sin 2α dα with Φ the β-average of Ψ.
/// Each symmetrized term is a free harmonic with eigenvalue 4k(k+1).
fn ritz(spec: &PotentialSpec, rho: f64, kmax: usize) -> Vec<f64> {
    let ks: Vec<usize> = (0..=kmax).filter(|&k| k != 1).collect();
    let nb = ks.len();
    let mut edges = vec![0.0];
    for i in 0..60 {
        edges.push(FRAC_PI_2 * ((i + 1) as f64 / 60.0).powi(2));
    }
    let nbeta = 96;
    let mut s = Mat::<f64>::zeros(nb, nb);
    let mut v = Mat::<f64>::zeros(nb, nb);
    let mut psi = vec![0.0; nb];
    let mut avg = vec![0.0; nb];
    for e in edges.windows(2) {
        let (xa, wa) = gauss_legendre(12, e[0], e[1]);
        for (&a, &wa) in xa.iter().zip(&wa) {
            let w = wa * (2.0 * a).sin();
            avg.iter_mut().for_each(|x| *x = 0.0);
            for m in 0..nbeta {
                let b = 2.0 * PI * m as f64 / nbeta as f64;
                let angles = [a, rotated_angle(a, b, 1.0), rotated_angle(a, b, -1.0)];
                let ps: Vec<Vec<f64>> = angles
                    .iter()
                    .map(|&x| legendre_all(kmax, (2.0 * x).cos()))
                    .collect();
                for (i, &k) in ks.iter().enumerate() {
                    psi[i] = ps[0][k] + ps[1][k] + ps[2][k];
                    avg[i] += psi[i] / nbeta as f64;
                }
                for i in 0..nb {
                    for j in 0..nb {
                        s[(i, j)] += w / nbeta as f64 * psi[i] * psi[j];
                    }
                }
            }
            let pot = 2.0 * rho * rho * spec.evaluate(2f64.sqrt() * rho * a.sin()).unwrap();
            for i in 0..nb {
                for j in 0..nb {
                    v[(i, j)] += 3.0 * w * pot * avg[i] * avg[j];
                }
            }
        }
    }
    let h = Mat::<f64>::from_fn(nb, nb, |i, j| {
        let l = |k: usize| 4.0 * (k * (k + 1)) as f64;
        0.5 * (l(ks[i]) + l(ks[j])) * s[(i, j)] + v[(i, j)]
    });
    // S^{-1/2} H S^{-1/2}, dropping numerically dependent directions
    let es = s.self_adjoint_eigen(Side::Lower).unwrap();
    let (sv, su) = (es.S().column_vector(), es.U());
    let keep: Vec<usize> = (0..nb).filter(|&i| sv[i] > 1e-12 * sv[nb - 1]).collect();
    let x = Mat::<f64>::from_fn(nb, keep.len(), |i, j| su[(i, keep[j])] / sv[keep[j]].sqrt());
    let red = x.transpose() * &h * &x;
    let red = Mat::<f64>::from_fn(red.nrows(), red.ncols(), |i, j| {
        0.5 * (red[(i, j)] + red[(j, i)])
    });
    let e = red.self_adjoint_eigen(Side::Lower).unwrap();
    let ev = e.S().column_vector();
    (0..ev.nrows()).map(|i| ev[i]).collect()
}

#[test]
fn matches_rayleigh_ritz_in_symmetrized_basis() {
    for (spec, rho) in [
        (PotentialSpec::gaussian_pair(1.0, -4.0, 0.0).unwrap(), 0.8),
        (PotentialSpec::gaussian_pair(1.0, -6.0, 3.0).unwrap(), 1.5),
        (PotentialSpec::gaussian_pair(1.0, 2.0, -9.0).unwrap(), 1.0),
    ] {
        let g = AngularGrid::for_range(1.0, rho, DEFAULT_NODES, DEFAULT_BETA).unwrap();
        let sp = solve_angular(&spec, rho, &g, 5).unwrap();
        let phys: Vec<f64> = sp
            .lambdas
            .iter()
            .zip(&sp.spurious)
            .filter(|(_, s)| !**s)
            .map(|(l, _)| *l)
            .collect();
        let rr = ritz(&spec, rho, 40);
        for k in 0..3 {
            let rel = (phys[k] - rr[k]).abs() / (1.0 + rr[k].abs());
            assert!(
                rel < 1e-8,
                "{spec:?} rho={rho}: solver {} vs ritz {}",
                phys[k],
                rr[k]
            );
        }
    }
}

#[test]
fn grid_doubling_changes_lowest_by_less_than_1e6() {
    let spec = PotentialSpec::gaussian_pair(1.0, -4.0, 0.0).unwrap();
    for rho in [0.5, 5.0, 100.0] {
        let g1 = AngularGrid::for_range(1.0, rho, DEFAULT_NODES, DEFAULT_BETA).unwrap();
        let g2 = AngularGrid::for_range(1.0, rho, 2 * DEFAULT_NODES, 2 * DEFAULT_BETA).unwrap();
        let l1 = solve_angular(&spec, rho, &g1, 1).unwrap().lambdas[0];
        let l2 = solve_angular(&spec, rho, &g2, 1).unwrap().lambdas[0];
        assert!(((l1 - l2) / l2).abs() < 1e-6, "rho={rho}: {l1} {l2}");
    }
}

#[test]
fn small_rho_approaches_free_spectrum() {
    let spec = PotentialSpec::gaussian_pair(1.0, -4.0, 0.0).unwrap();
    let g = AngularGrid::for_range(1.0, 1e-3, DEFAULT_NODES, DEFAULT_BETA).unwrap();
    let sp = solve_angular(&spec, 1e-3, &g, 3).unwrap();
    for (l, want) in sp.lambdas.iter().zip([0.0, 8.0, 24.0]) {
        assert!((l - want).abs() < 1e-4, "{:?}", sp.lambdas);
    }
}

#[test]
fn full_wavefunction_is_normalized_and_totals_consistent() {
    let spec = PotentialSpec::gaussian_pair(1.0, -4.0, 0.0).unwrap();
    for rho in [3.0, 50.0] {
        let g = AngularGrid::for_range(1.0, rho, DEFAULT_NODES, DEFAULT_BETA).unwrap();
        let sp = solve_angular(&spec, rho, &g, 3).unwrap();
        let w = &g.weights()[1..g.intervals()];
        for (n, tot) in sp.totals.iter().enumerate() {
            if sp.spurious[n] {
                assert!(tot.iter().all(|&x| x == 0.0));
                continue;
            }
            let full = g.extend(&sp.components[n]);
            // ∫|Ψ|² over (α, β) with Ψ = φ(α) + φ(α′₊) + φ(α′₋)
            let mut norm = 0.0;
            for k in 0..200 {
                let (lo, hi) = (
                    FRAC_PI_2 * k as f64 / 200.0,
                    FRAC_PI_2 * (k + 1) as f64 / 200.0,
                );
                let (xa, wa) = gauss_legendre(8, lo, hi);
                for (&a, &wa) in xa.iter().zip(&wa) {
                    let m = if rho > 10.0 { 2048 } else { 256 };
                    let s: f64 = (0..m)
                        .map(|j| {
                            let b = 2.0 * PI * j as f64 / m as f64;
                            let psi = g.interpolate(&full, a)
                                + g.interpolate(&full, rotated_angle(a, b, 1.0))
                                + g.interpolate(&full, rotated_angle(a, b, -1.0));
                            psi * psi
                        })
                        .sum();
                    norm += wa * (2.0 * a).sin() * s / m as f64;
                }
            }
            // default-grid accuracy; doubling n brings it to ~1e-11
            assert!((norm - 1.0).abs() < 1e-7, "rho {rho} mode {n}: {norm}");
            // the s-wave projection carries part of the norm (about 1/3 once the pair is tightly bound)
            let proj: f64 = tot.iter().zip(w).map(|(t, w)| w * t * t).sum();
            assert!(proj < 1.0 && proj > 0.0, "{proj}");
            // Φ = φ + (1/π)∫φ(α′)dβ, checked with an independent β-rule
            let scale = tot.iter().fold(0.0f64, |m, t| m.max(t.abs()));
            for (i, &a) in g.nodes().iter().enumerate().step_by(7) {
                let m = 4096;
                let avg: f64 = (0..m)
                    .map(|k| {
                        g.interpolate(&full, rotated_angle(a, 2.0 * PI * k as f64 / m as f64, 1.0))
                    })
                    .sum::<f64>()
                    / m as f64;
                let err = (sp.components[n][i] + 2.0 * avg - tot[i]).abs() / scale;
                assert!(err < 1e-8, "rho {rho} alpha {a}: {err:.2e}");
            }
        }
    }
}

#[test]
fn deep_pair_tracks_bound_parabola_slope() {
    // λ₁ ≈ −2ρ²|E_pair| − 4/3 once the pair is bound and ρ ≫ range
    let spec = PotentialSpec::gaussian_pair(1.0, -4.0, 0.0).unwrap();
    let e2 = halo2d::twobody::bound_states(&spec, -10.0).unwrap()[0];
    let rho = 60.0;
    let g = AngularGrid::for_range(1.0, rho, DEFAULT_NODES, DEFAULT_BETA).unwrap();
    let l = solve_angular(&spec, rho, &g, 1).unwrap().lambdas[0];
    let slope = l / (2.0 * rho * rho * e2);
    assert!((slope - 1.0).abs() < 1e-3, "{slope}");
}

/// Jacobi vectors built explicitly with relative angle β, then the
/// hyperangles of the two partner sets (pairs 31 and 12).
fn vector_oracle(alpha: f64, beta: f64) -> (f64, f64) {
    let xv = [alpha.sin(), 0.0];
    let yv = [alpha.cos() * beta.cos(), alpha.cos() * beta.sin()];
    // x = (r₂ − r₃)/√2, y = √(2/3)(r₁ − (r₂ + r₃)/2), centre of mass at 0
    let d23 = [xv[0] * 2f64.sqrt(), xv[1] * 2f64.sqrt()];
    let s1 = [yv[0] * 1.5f64.sqrt(), yv[1] * 1.5f64.sqrt()];
    let r1 = [2.0 / 3.0 * s1[0], 2.0 / 3.0 * s1[1]];
    let r2 = [-s1[0] / 3.0 + d23[0] / 2.0, -s1[1] / 3.0 + d23[1] / 2.0];
    let r3 = [-s1[0] / 3.0 - d23[0] / 2.0, -s1[1] / 3.0 - d23[1] / 2.0];
    let angle = |p: [f64; 2], q: [f64; 2], spec: [f64; 2]| {
        let x = [(p[0] - q[0]) / 2f64.sqrt(), (p[1] - q[1]) / 2f64.sqrt()];
        let c = [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])];
        let y = [
            (2.0f64 / 3.0).sqrt() * (spec[0] - c[0]),
            (2.0f64 / 3.0).sqrt() * (spec[1] - c[1]),
        ];
        x[0].hypot(x[1]).atan2(y[0].hypot(y[1]))
    };
    (angle(r3, r1, r2), angle(r1, r2, r3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn rotation_matches_vector_geometry(alpha in 0.0..FRAC_PI_2, beta in 0.0..(2.0 * PI)) {
        let (a31, a12) = vector_oracle(alpha, beta);
        prop_assert!((rotated_angle(alpha, beta, 1.0) - a31).abs() < 1e-12);
        prop_assert!((rotated_angle(alpha, beta, -1.0) - a12).abs() < 1e-12);
    }
}

#[test]
fn equilateral_triangle_hyperradius() {
    let side = 1.7;
    let (rho, _) =
        halo2d::angular::hyperspherical_from_jacobi(side, side * 3f64.sqrt() / 2.0).unwrap();
    assert!((rho - side).abs() < 1e-14);
}
