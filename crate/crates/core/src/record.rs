//! Machine-readable result records and the append-only JSONL cache.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::bound::BoundCertificate;
use crate::enumerate::{ClassificationReport, CrossCheck};
use crate::error::Result;
use crate::tables::CellCheck;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "REGBOUND_CACHE";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub source: String,
    pub n: usize,
    pub degree: Option<usize>,
    pub graph6: String,
    pub values: Vec<f64>,
    pub multiplicities: Vec<(f64, usize)>,
    pub mu1: Option<f64>,
    /// Trace-formula values `S_0..S_mmax`, when the graph is regular.
    pub trace_values: Option<Vec<f64>>,
    /// Outcome of the check against an atlas entry's expected spectrum.
    pub atlas_check: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Bound(BoundCertificate),
    Classification(ClassificationReport),
    Spectrum(SpectrumReport),
    Tables(Vec<CellCheck>),
    CrossCheck(CrossCheck),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: serde_json::Value,
    pub result: Payload,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub version: String,
    pub seed: Option<u64>,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: serde_json::Value, result: Payload, seed: Option<u64>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        ResultRecord {
            command: command.to_string(),
            inputs,
            result,
            timestamp,
            version: VERSION.to_string(),
            seed,
        }
    }

    /// Same command, inputs, seed and tool version.
    pub fn same_request(&self, other: &ResultRecord) -> bool {
        self.command == other.command
            && self.inputs == other.inputs
            && self.seed == other.seed
            && self.version == other.version
    }
}

pub fn append(path: &Path, record: &ResultRecord) -> Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    let mut line = serde_json::to_string(record)?;
    line.push('\n');
    f.write_all(line.as_bytes())?;
    Ok(())
}

/// Reads every record; lines that do not parse are skipped, since the cache
/// only ever saves recomputation.
pub fn load(path: &Path) -> Result<Vec<ResultRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let f = BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line?;
        if let Ok(r) = serde_json::from_str::<ResultRecord>(&line) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Latest cached record for the same request, if any.
pub fn lookup(path: &Path, probe: &ResultRecord) -> Result<Option<ResultRecord>> {
    Ok(load(path)?.into_iter().rev().find(|r| r.same_request(probe)))
}
