//! Renormalized Numerov integration of y'' = M(x) y on a uniform grid.
//!
//! Works with ratios R_i = F_{i+1}/F_i of F = (1 − h²M/12) y, so it never
//! overflows in classically forbidden regions and counts nodes as sign
//! changes of consecutive y values.

/// Boundary condition at the first grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Start {
    /// y₀ = 0.
    Dirichlet,
    /// y₀ = y₁, i.e. vanishing derivative to leading order.
    Flat,
    /// Given ratio y₁/y₀.
    Ratio(f64),
}

/// Result of one outward sweep.
#[derive(Debug, Clone)]
pub struct Sweep {
    /// y_{i+1}/y_i for i in 0..len-1.
    pub ratios: Vec<f64>,
    /// Number of sign changes of y over the swept range.
    pub nodes: usize,
}

#[inline]
fn t(h2: f64, m: f64) -> f64 {
    h2 * m / 12.0
}

/// Index past which a decaying solution is numerically irrelevant: first
/// point beyond the outermost classical turning point where the WKB
/// exponent ∫√M dx exceeds `depth`.
pub fn truncation_index(m: &[f64], h: f64, depth: f64) -> usize {
    let n = m.len();
    let last_allowed = m.iter().rposition(|&v| v < 0.0).unwrap_or(0);
    let mut acc = 0.0;
    for (i, &v) in m.iter().enumerate().skip(last_allowed + 1) {
        acc += v.max(0.0).sqrt() * h;
        if acc > depth {
            return i + 1;
        }
    }
    n
}

/// Outward sweep over `m[..end]`.
pub fn outward(m: &[f64], h: f64, start: Start, end: usize) -> Sweep {
    let h2 = h * h;
    let end = end.min(m.len());
    let mut ratios = Vec::with_capacity(end.saturating_sub(1));
    let mut nodes = 0;
    if end < 2 {
        return Sweep { ratios, nodes };
    }
    // r = F_{i+1}/F_i
    let mut r = match start {
        Start::Dirichlet => f64::INFINITY,
        Start::Flat => (1.0 - t(h2, m[1])) / (1.0 - t(h2, m[0])),
        Start::Ratio(q) => q * (1.0 - t(h2, m[1])) / (1.0 - t(h2, m[0])),
    };
    let push = |r: f64, i: usize, ratios: &mut Vec<f64>, nodes: &mut usize| {
        let y = if r.is_infinite() {
            f64::INFINITY
        } else {
            r * (1.0 - t(h2, m[i])) / (1.0 - t(h2, m[i + 1]))
        };
        if y < 0.0 {
            *nodes += 1;
        }
        ratios.push(y);
    };
    push(r, 0, &mut ratios, &mut nodes);
    for i in 1..end - 1 {
        let u = 12.0 / (1.0 - t(h2, m[i])) - 10.0;
        r = if r.is_infinite() { u } else { u - 1.0 / r };
        push(r, i, &mut ratios, &mut nodes);
    }
    Sweep { ratios, nodes }
}

/// Inward sweep from `m[end-1]` (Dirichlet there) down to index `stop`.
/// Returns y_{i}/y_{i+1} for i = stop..end-1 in ascending order of i.
pub fn inward(m: &[f64], h: f64, stop: usize, end: usize) -> Vec<f64> {
    let h2 = h * h;
    let mut out = vec![0.0; end - stop - 1];
    // y_{end-2}/y_{end-1} with y_{end-1} = 0
    out[end - stop - 2] = f64::INFINITY;
    // r = F_{i-1}/F_i walking down
    let mut r = f64::INFINITY;
    for i in (stop + 1..end - 1).rev() {
        let u = 12.0 / (1.0 - t(h2, m[i])) - 10.0;
        r = if r.is_infinite() { u } else { u - 1.0 / r };
        out[i - 1 - stop] = r * (1.0 - t(h2, m[i])) / (1.0 - t(h2, m[i - 1]));
    }
    out
}

/// Reconstruct y from outward ratios, y₀ = 1, rescaled so max|y| = 1.
pub fn from_ratios(ratios: &[f64]) -> Vec<f64> {
    let mut logs = Vec::with_capacity(ratios.len() + 1);
    let mut signs = Vec::with_capacity(ratios.len() + 1);
    let (mut l, mut s) = (0.0f64, 1.0f64);
    logs.push(l);
    signs.push(s);
    for &q in ratios {
        if q.is_infinite() {
            // y₀ = 0 start: restart the log scale from the first nonzero value
            l = 0.0;
            if let Some(prev) = logs.last_mut() {
                *prev = f64::NEG_INFINITY;
            }
        } else {
            l += q.abs().ln();
            s *= q.signum();
        }
        logs.push(l);
        signs.push(s);
    }
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    logs.iter()
        .zip(&signs)
        .map(|(&l, &s)| s * (l - top).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_nodes_count_states() {
        // y'' = (x² − E) y on [-8, 8]; eigenvalues E = 1, 3, 5, …
        let n = 4001;
        let h = 16.0 / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| -8.0 + i as f64 * h).collect();
        for (e, want) in [(0.9, 0), (1.1, 1), (4.0, 2), (6.5, 3)] {
            let m: Vec<f64> = grid.iter().map(|x| x * x - e).collect();
            let end = truncation_index(&m, h, 40.0);
            assert_eq!(outward(&m, h, Start::Dirichlet, end).nodes, want, "E = {e}");
        }
    }

    #[test]
    fn flat_start_free_solution() {
        // y'' = −y with y'(0) = 0 → cos x
        let n = 2001;
        let h = 6.0 / (n - 1) as f64;
        let m = vec![-1.0; n];
        let mut first = vec![1.0];
        // exact first ratio instead of the crude flat start
        let sw = outward(&m, h, Start::Ratio(h.cos()), n);
        first.extend(sw.ratios.iter().scan(1.0, |y, q| {
            *y *= q;
            Some(*y)
        }));
        for (i, y) in first.iter().enumerate() {
            assert!((y - (i as f64 * h).cos()).abs() < 1e-9, "i = {i}");
        }
        assert_eq!(sw.nodes, 2);
    }

    #[test]
    fn inward_matches_outward_at_eigenvalue() {
        let n = 4001;
        let h = 16.0 / (n - 1) as f64;
        let m: Vec<f64> = (0..n)
            .map(|i| (-8.0 + i as f64 * h).powi(2) - 3.0)
            .collect();
        let out = outward(&m, h, Start::Dirichlet, n);
        let inn = inward(&m, h, 0, n);
        let mid = n / 2 + 37;
        assert!((out.ratios[mid] - 1.0 / inn[mid]).abs() < 1e-6);
    }
}
