//! On-disk artifacts: per-case certificate JSON, the summary CSV, and the
//! run manifest.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CERTIFICATE_SCHEMA: u32 = 1;
pub const CERTIFICATE_DIR: &str = "certificates";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const REPORT_FILE: &str = "report.md";

/// One certificate per case. Only the case description and `y` are trusted
/// by the audit; `achieved_z` and `verified` are informational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: u32,
    pub graph: String,
    pub root: usize,
    /// Parent of each vertex `1..=V`, 0 at the root.
    pub parents: Vec<usize>,
    pub tetra_base: [usize; 3],
    pub m: usize,
    pub n: usize,
    pub y: Vec<String>,
    pub achieved_z: f64,
    pub verified: bool,
}

impl CertificateFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: Self =
            serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
        if file.schema != CERTIFICATE_SCHEMA {
            return Err(Error::Config(format!(
                "{}: unsupported certificate schema {}",
                path.display(),
                file.schema
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}

/// One summary CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub graph: String,
    pub root: usize,
    pub tree_index: usize,
    pub tetra_index: usize,
    pub z: f64,
    pub verified: bool,
    pub ms: u64,
}

pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| Error::io(path, std::io::Error::other(e)))?;
    if rows.is_empty() {
        w.write_record(["graph", "root", "tree_index", "tetra_index", "z", "verified", "ms"])
            .map_err(|e| Error::io(path, std::io::Error::other(e)))?;
    }
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::io(path, std::io::Error::other(e)))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::io(path, std::io::Error::other(e)))?;
    r.deserialize()
        .map(|row| row.map_err(|e| Error::Config(format!("{}: {e}", path.display()))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestGraph {
    pub id: String,
    #[serde(rename = "V")]
    pub vertex_count: usize,
    pub representatives: Vec<usize>,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestOptions {
    pub z_threshold: f64,
    pub max_iters: usize,
    pub max_den: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub graphs: Vec<ManifestGraph>,
    pub options: ManifestOptions,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub total_cases: usize,
    pub verified_cases: usize,
}

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }
}
