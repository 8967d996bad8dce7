//! CSV tables, atomic file writes and the run manifest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::hash::Hasher;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use fnv::FnvHasher;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::svg::Plot;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Cell::Int(i) => i as f64,
            Cell::Float(x) => x,
        }
    }

    fn write_to(&self, out: &mut String) {
        match *self {
            Cell::Int(i) => write!(out, "{i}"),
            // 17 significant digits round-trip every f64.
            Cell::Float(x) => write!(out, "{x:.16e}"),
        }
        .expect("writing to a String cannot fail");
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i.into())
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.write_to(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

/// 64-bit FNV-1a digest as 16 hex digits.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut h = FnvHasher::default();
    h.write(bytes);
    format!("{:016x}", h.finish())
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub artifact_version: String,
    pub experiment: String,
    pub base_seed: u64,
    /// Trial `k` of every grid point draws from stream `k`.
    pub stream_ids: String,
    pub config: serde_json::Value,
    pub wall_clock_seconds: f64,
    pub files: BTreeMap<String, String>,
}

impl ExperimentManifest {
    pub fn new(experiment: &str, base_seed: u64, trials: usize, config: serde_json::Value) -> Self {
        Self {
            artifact_version: ARTIFACT_VERSION.to_string(),
            experiment: experiment.to_string(),
            base_seed,
            stream_ids: format!("0..{trials}"),
            config,
            wall_clock_seconds: 0.0,
            files: BTreeMap::new(),
        }
    }
}

/// One output table with an optional figure.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub stem: String,
    pub table: Table,
    pub plot: Option<Plot>,
}

/// Writes every table as CSV, every plot as SVG and then `manifest.json`.
///
/// The manifest records digests of all files written before it.
pub fn emit_outputs(dir: &Path, artifacts: &[Artifact], manifest: &mut ExperimentManifest) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for art in artifacts {
        let csv = art.table.to_csv();
        let name = format!("{}.csv", art.stem);
        let path = dir.join(&name);
        write_atomic(&path, csv.as_bytes())?;
        manifest.files.insert(name, fnv1a_hex(csv.as_bytes()));
        written.push(path);
        if let Some(plot) = &art.plot {
            let svg = plot.render();
            let name = format!("{}.svg", art.stem);
            let path = dir.join(&name);
            write_atomic(&path, svg.as_bytes())?;
            manifest.files.insert(name, fnv1a_hex(svg.as_bytes()));
            written.push(path);
        }
    }
    let json = serde_json::to_string_pretty(manifest).expect("manifest is always serializable");
    let path = dir.join("manifest.json");
    write_atomic(&path, json.as_bytes())?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_vectors() {
        assert_eq!(fnv1a_hex(b""), "cbf29ce484222325");
        assert_eq!(fnv1a_hex(b"a"), "af63dc4c8601ec8c");
        assert_eq!(fnv1a_hex(b"foobar"), "85944171f73967e8");
    }

    #[test]
    fn csv_format() {
        let mut t = Table::new(&["n_bits", "x"]);
        t.push(vec![Cell::from(10u32), Cell::from(0.1)]);
        assert_eq!(t.to_csv(), "n_bits,x\n10,1.0000000000000001e-1\n");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn empty_table_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let t = Table::new(&["a", "b"]);
        let mut m = ExperimentManifest::new("custom", 1, 0, serde_json::Value::Null);
        emit_outputs(
            dir.path(),
            &[Artifact {
                stem: "empty".into(),
                table: t,
                plot: None,
            }],
            &mut m,
        )
        .unwrap();
        let csv = std::fs::read_to_string(dir.path().join("empty.csv")).unwrap();
        assert_eq!(csv, "a,b\n");
        let json = std::fs::read_to_string(dir.path().join("manifest.json")).unwrap();
        let back: ExperimentManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back.files["empty.csv"], fnv1a_hex(b"a,b\n"));
    }

    #[test]
    fn unwritable_directory_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, b"x").unwrap();
        let err = write_atomic(&blocker.join("out.csv"), b"data").unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}
