//! Knot tables in CSV form.
//!
//! Every table has the header `name,crossing_number,alternating,dt_code,pd_code`.
//! At least one of the two encodings must be present and realize exactly
//! `crossing_number` crossings.

use std::collections::HashSet;
use std::io::Read;
use std::path::Path;

use knot_detect_core::diagram::{dt_to_pd, parse_dt, parse_pd};
use knot_detect_core::{DtCode, LinkDiagram};
use serde::Deserialize;

const KNOTS_3_10: &str = include_str!("../data/knots_3_10.csv");
const MUTANT_PAIR: &str = include_str!("../data/knots_11n_mutants.csv");

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("row {row}: {reason}")]
    Parse { row: usize, reason: String },
    #[error("row {row}: duplicate knot name {name:?}")]
    DuplicateName { row: usize, name: String },
    #[error("row {row}: {name} declares {declared} crossings but its encoding has {realized}")]
    EncodingMismatch { row: usize, name: String, declared: usize, realized: usize },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub crossing_number: usize,
    pub alternating: bool,
    pub dt: Option<DtCode>,
    pub pd: Option<String>,
    diagram: LinkDiagram,
}

impl KnotRecord {
    /// A record for a diagram that did not come from a table.
    pub fn from_diagram(name: impl Into<String>, diagram: LinkDiagram) -> Self {
        let name = name.into();
        KnotRecord {
            crossing_number: diagram.n_crossings(),
            alternating: diagram.is_alternating(),
            dt: None,
            pd: Some(knot_detect_core::diagram::serialize_pd(&diagram)),
            diagram: diagram.with_name(name.clone()),
            name,
        }
    }

    /// The realized diagram: the DT code when present, the PD code otherwise.
    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }
}

#[derive(Debug, Deserialize)]
struct Row {
    name: String,
    crossing_number: usize,
    alternating: bool,
    dt_code: Option<String>,
    pd_code: Option<String>,
}

pub fn ingest(path: &Path) -> Result<Vec<KnotRecord>, IngestError> {
    let io = |source| IngestError::Io { path: path.display().to_string(), source };
    let mut text = String::new();
    std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut text)).map_err(io)?;
    ingest_str(&text)
}

/// Rows are numbered from 1 for the first line after the header.
pub fn ingest_str(text: &str) -> Result<Vec<KnotRecord>, IngestError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut names = HashSet::new();
    let mut records = Vec::new();
    for (i, row) in reader.deserialize::<Row>().enumerate() {
        let row_no = i + 1;
        let row = row.map_err(|e| IngestError::Parse { row: row_no, reason: e.to_string() })?;
        let record = realize(row_no, row)?;
        if !names.insert(record.name.clone()) {
            return Err(IngestError::DuplicateName { row: row_no, name: record.name });
        }
        records.push(record);
    }
    Ok(records)
}

fn realize(row_no: usize, row: Row) -> Result<KnotRecord, IngestError> {
    let parse_err = |reason: String| IngestError::Parse { row: row_no, reason };
    let present = |s: Option<String>| s.filter(|s| !s.trim().is_empty());
    let (dt_text, pd_text) = (present(row.dt_code), present(row.pd_code));
    let dt = dt_text.as_deref().map(parse_dt).transpose().map_err(|e| parse_err(format!("dt_code: {e}")))?;
    let from_dt = dt.as_ref().map(dt_to_pd).transpose().map_err(|e| parse_err(format!("dt_code: {e}")))?;
    let from_pd = pd_text.as_deref().map(parse_pd).transpose().map_err(|e| parse_err(format!("pd_code: {e}")))?;
    for d in from_dt.iter().chain(&from_pd) {
        if d.n_crossings() != row.crossing_number {
            return Err(IngestError::EncodingMismatch {
                row: row_no,
                name: row.name,
                declared: row.crossing_number,
                realized: d.n_crossings(),
            });
        }
    }
    let diagram = from_dt.or(from_pd).ok_or_else(|| parse_err("neither dt_code nor pd_code is present".into()))?;
    Ok(KnotRecord {
        diagram: diagram.with_name(row.name.clone()),
        name: row.name,
        crossing_number: row.crossing_number,
        alternating: row.alternating,
        dt,
        pd: pd_text,
    })
}

/// The prime knots with 3 to 10 crossings.
pub fn knots_3_10() -> Vec<KnotRecord> {
    ingest_str(KNOTS_3_10).expect("embedded table is valid")
}

/// The two 11-crossing knots 11n34 and 11n42.
pub fn mutant_pair() -> Vec<KnotRecord> {
    ingest_str(MUTANT_PAIR).expect("embedded table is valid")
}
