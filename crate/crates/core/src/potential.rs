//! Two-body radial potentials in natural units ħ = m = 1.

use crate::error::{Error, Result};
use crate::interp::Pchip;
use std::path::Path;

/// A tabulated potential, interpolated by a monotone cubic and zero past
/// its last grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    table: Pchip,
}

impl Tabulated {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() < 2 || r.len() != v.len() {
            return Err(Error::Config(
                "tabulated potential needs >= 2 (r, V) pairs".into(),
            ));
        }
        if r[0] < 0.0 || r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "tabulated r grid must be non-negative and strictly ascending".into(),
            ));
        }
        if r.iter().chain(&v).any(|x| !x.is_finite()) {
            return Err(Error::Config(
                "tabulated potential contains non-finite values".into(),
            ));
        }
        let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if v[v.len() - 1].abs() > 1e-10 * vmax {
            return Err(Error::Config(format!(
                "tabulated potential must vanish at its last point, got V = {}",
                v[v.len() - 1]
            )));
        }
        Ok(Tabulated {
            table: Pchip::new(r, v),
        })
    }

    /// Reads two whitespace-separated columns `r V`; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let (mut r, mut v) = (Vec::new(), Vec::new());
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::Config(format!("{}:{}: bad number {s:?}", path.display(), no + 1))
                })
            };
            if cols.len() != 2 {
                return Err(Error::Config(format!(
                    "{}:{}: expected two columns",
                    path.display(),
                    no + 1
                )));
            }
            r.push(parse(cols[0])?);
            v.push(parse(cols[1])?);
        }
        Self::new(r, v)
    }

    pub fn r(&self) -> &[f64] {
        self.table.x()
    }

    pub fn v(&self) -> &[f64] {
        self.table.y()
    }
}

/// Two-body potential model.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// Contact interaction characterized only by its 2D scattering length.
    ZeroRange {
        a: f64,
    },
    /// V(r) = (1/(2b²))·[S1·exp(−r²/(2b²)) + S2·exp(−2r²/b²)].
    GaussianPair {
        b: f64,
        s1: f64,
        s2: f64,
    },
    Tabulated(Tabulated),
}

impl PotentialSpec {
    pub fn zero_range(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Config(format!(
                "scattering length must be positive, got {a}"
            )));
        }
        Ok(PotentialSpec::ZeroRange { a })
    }

    pub fn gaussian_pair(b: f64, s1: f64, s2: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::Config(format!("range b must be positive, got {b}")));
        }
        if !(s1.is_finite() && s2.is_finite()) {
            return Err(Error::Config("strengths must be finite".into()));
        }
        Ok(PotentialSpec::GaussianPair { b, s1, s2 })
    }

    pub fn is_zero_range(&self) -> bool {
        matches!(self, PotentialSpec::ZeroRange { .. })
    }

    /// V(r); zero-range potentials have no pointwise value.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if r < 0.0 || r.is_nan() {
            return Err(Error::Domain(format!("potential evaluated at r = {r}")));
        }
        match self {
            PotentialSpec::ZeroRange { .. } => Err(Error::NotPointwise),
            PotentialSpec::GaussianPair { b, s1, s2 } => {
                let x = r * r / (b * b);
                Ok((s1 * (-0.5 * x).exp() + s2 * (-2.0 * x).exp()) / (2.0 * b * b))
            }
            PotentialSpec::Tabulated(t) => {
                if r > t.table.x_max() {
                    Ok(0.0)
                } else {
                    Ok(t.table.eval(r))
                }
            }
        }
    }

    /// Infallible evaluation for finite-range potentials in hot loops.
    pub(crate) fn value(&self, r: f64) -> f64 {
        self.evaluate(r.abs()).unwrap_or(0.0)
    }

    /// Length scale of the interaction: a, b or the last table point.
    pub fn effective_range_scale(&self) -> f64 {
        match self {
            PotentialSpec::ZeroRange { a } => *a,
            PotentialSpec::GaussianPair { b, .. } => *b,
            PotentialSpec::Tabulated(t) => t.table.x_max(),
        }
    }

    /// True when V ≥ 0 everywhere (no bound states possible).
    pub fn is_nonattractive(&self) -> bool {
        match self {
            PotentialSpec::ZeroRange { .. } => false,
            PotentialSpec::GaussianPair { s1, s2, .. } => *s1 >= 0.0 && *s2 >= 0.0,
            PotentialSpec::Tabulated(t) => t.v().iter().all(|&v| v >= 0.0),
        }
    }

    /// True when V vanishes identically.
    pub fn is_free(&self) -> bool {
        match self {
            PotentialSpec::ZeroRange { .. } => false,
            PotentialSpec::GaussianPair { s1, s2, .. } => *s1 == 0.0 && *s2 == 0.0,
            PotentialSpec::Tabulated(t) => t.v().iter().all(|&v| v == 0.0),
        }
    }

    /// Largest |V| on a sample grid out to ten ranges.
    pub fn max_abs(&self) -> f64 {
        let scale = self.effective_range_scale();
        (0..=2000)
            .map(|i| self.value(i as f64 * scale * 0.005).abs())
            .fold(0.0, f64::max)
    }
}
