//! The sweep CSV schema.

use std::path::Path;

use serde::{Deserialize, Serialize};
use xcube::harness::{PointResult, SweepResult};

use crate::CliError;

pub const HEADER: [&str; 11] = [
    "L",
    "p",
    "sector",
    "variant",
    "iterations",
    "trials",
    "failures",
    "failure_rate",
    "ci_low",
    "ci_high",
    "master_seed",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(rename = "L")]
    pub size: usize,
    pub p: f64,
    pub sector: String,
    pub variant: String,
    pub iterations: usize,
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub master_seed: u64,
}

impl Row {
    pub fn point(&self) -> PointResult {
        PointResult {
            size: self.size,
            p: self.p,
            trials: self.trials,
            failures: self.failures,
            failure_rate: self.failure_rate,
            ci_low: self.ci_low,
            ci_high: self.ci_high,
        }
    }
}

pub fn rows(result: &SweepResult) -> Vec<Row> {
    let c = &result.config;
    result
        .points
        .iter()
        .map(|pt| Row {
            size: pt.size,
            p: pt.p,
            sector: c.sector.to_string(),
            variant: c.variant.name().to_string(),
            iterations: c.variant.iterations(),
            trials: pt.trials,
            failures: pt.failures,
            failure_rate: pt.failure_rate,
            ci_low: pt.ci_low,
            ci_high: pt.ci_high,
            master_seed: c.seed,
        })
        .collect()
}

pub fn write(path: &Path, rows: &[Row]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    if rows.is_empty() {
        w.write_record(HEADER).map_err(io)?;
    }
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Read a sweep CSV, insisting on the exact header.
pub fn read(path: &Path) -> Result<Vec<Row>, CliError> {
    let bad = |m: String| CliError::Input(format!("{}: {m}", path.display()));
    let mut r = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(bad(format!("header must be `{}`", HEADER.join(","))));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.deserialize().enumerate() {
        let row: Row = rec.map_err(|e| bad(format!("row {}: {e}", i + 1)))?;
        if row.failures > row.trials {
            return Err(bad(format!("row {}: more failures than trials", i + 1)));
        }
        rows.push(row);
    }
    Ok(rows)
}
