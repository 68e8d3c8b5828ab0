//! Flat `key = value` configuration files.

use crate::error::{Error, Result};
use crate::potential::{PotentialSpec, Tabulated};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Parsed configuration. Keys are case-sensitive; `#` starts a comment.
#[derive(Debug, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
    sha256: String,
    base: PathBuf,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", no + 1)));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key {k}", no + 1)));
            }
        }
        let sha256 = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        Ok(Config { values, sha256, base: PathBuf::from(".") })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut c = Self::parse(&text)?;
        c.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(c)
    }

    /// Hex SHA-256 of the raw file contents.
    pub fn sha256(&self) -> &str {
        &self.sha256
    }

    /// Fails on any key that is not in `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::Config(format!("unknown key {k}"))),
            None => Ok(()),
        }
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        self.opt_f64(key).map(|v| v.unwrap_or(default))
    }

    pub fn opt_f64(&self, key: &str) -> Result<Option<f64>> {
        self.str(key).map(|v| number(key, v)).transpose()
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.str(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got {v:?}"))),
        }
    }

    /// Comma-separated list of numbers.
    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.str(key)
            .map(|v| v.split(',').map(|x| number(key, x.trim())).collect::<Result<Vec<_>>>())
            .transpose()
    }

    /// The two-body potential described by the `potential.*` keys.
    pub fn potential(&self) -> Result<PotentialSpec> {
        let kind = self.str("potential.type").ok_or_else(|| Error::Config("missing potential.type".into()))?;
        match kind {
            "zero_range" => PotentialSpec::zero_range(self.require("potential.a")?),
            "gaussian_pair" => PotentialSpec::gaussian_pair(
                self.f64_or("potential.b", 1.0)?,
                self.f64_or("potential.S1", 0.0)?,
                self.f64_or("potential.S2", 0.0)?,
            ),
            "tabulated" => {
                let file = self.str("potential.file").ok_or_else(|| Error::Config("missing potential.file".into()))?;
                Ok(PotentialSpec::Tabulated(Tabulated::from_file(&self.base.join(file))?))
            }
            other => Err(Error::Config(format!("unknown potential.type {other:?}"))),
        }
    }

    pub fn require(&self, key: &str) -> Result<f64> {
        self.opt_f64(key)?.ok_or_else(|| Error::Config(format!("missing {key}")))
    }
}

fn number(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Config(format!("{key}: expected a finite number, got {v:?}")))
}

/// Keys understood by every command that takes a potential.
pub const POTENTIAL_KEYS: &[&str] = &["potential.type", "potential.a", "potential.b", "potential.S1", "potential.S2", "potential.file"];
