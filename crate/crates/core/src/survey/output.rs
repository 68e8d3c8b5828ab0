//! CSV and JSON artifacts with a metadata header.

use serde::Serialize;
use std::fmt::Write;

pub const UNITS: &str = "hbar = m = 1; lengths in units of the potential range (or a for zero range)";

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub program: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config_sha256: String,
    pub units: String,
}

impl Meta {
    pub fn new(command: &str, config_sha256: &str, units: &str) -> Self {
        Meta {
            program: "halo2d",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config_sha256: config_sha256.to_string(),
            units: units.to_string(),
        }
    }
}

/// A named output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// CSV text: `#` header lines, column names, then rows.
pub fn csv(meta: &Meta, extra: &[(&str, String)], columns: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {} {}", meta.program, meta.version);
    let _ = writeln!(s, "# command = {}", meta.command);
    let _ = writeln!(s, "# config_sha256 = {}", meta.config_sha256);
    let _ = writeln!(s, "# units: {}", meta.units);
    for (k, v) in extra {
        let _ = writeln!(s, "# {k} = {v}");
    }
    s.push_str(&columns.join(","));
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(v) => format!("{v:e}"),
                Cell::Int(v) => v.to_string(),
                Cell::Text(t) => t.clone(),
                Cell::Empty => String::new(),
            })
            .collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct WithMeta<'a, T: Serialize> {
    meta: &'a Meta,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON object holding `meta` next to the fields of `body`.
pub fn json<T: Serialize>(meta: &Meta, body: &T) -> String {
    let mut s = serde_json::to_string_pretty(&WithMeta { meta, body }).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"));
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let m = Meta::new("demo", "abc", UNITS);
        let s = csv(&m, &[("note", "x".into())], &["a", "b"], &[vec![1.5.into(), "t".into()], vec![Cell::Empty, 3usize.into()]]);
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# halo2d"));
        assert_eq!(lines[5], "a,b");
        assert_eq!(lines[6], "1.5e0,t");
        assert_eq!(lines[7], ",3");
    }

    #[test]
    fn json_carries_meta() {
        #[derive(Serialize)]
        struct B {
            x: f64,
        }
        let s = json(&Meta::new("demo", "abc", UNITS), &B { x: 2.0 });
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["meta"]["command"], "demo");
        assert_eq!(v["x"], 2.0);
    }
}
