//! Membership datasets in CSV and JSON.
//!
//! CSV uses one fixed header; blank cells are absent weights and lines
//! starting with `#` are provenance comments:
//!
//! ```text
//! item,concept_a,concept_b,mu_a,mu_b,mu_a_neg,mu_b_neg,mu_and,mu_or,mu_a_bneg,mu_aneg_b,mu_aneg_bneg
//! ```
//!
//! JSON is `{"provenance": "...", "records": [ {...}, ... ]}` with the same
//! field names; absent weights are omitted.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use fockfit_core::{Connective, NegationRecord, PairWeights};
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: [&str; 12] = [
    "item",
    "concept_a",
    "concept_b",
    "mu_a",
    "mu_b",
    "mu_a_neg",
    "mu_b_neg",
    "mu_and",
    "mu_or",
    "mu_a_bneg",
    "mu_aneg_b",
    "mu_aneg_bneg",
];

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad CSV header: expected `{}`, found `{found}`", CSV_HEADER.join(","))]
    Header { found: String },
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Json,
}

impl DataFormat {
    /// `.json` is JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => DataFormat::Json,
            _ => DataFormat::Csv,
        }
    }
}

/// One item's measured weights; any subset of the combination weights may be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipRecord {
    pub item: String,
    #[serde(default)]
    pub concept_a: String,
    #[serde(default)]
    pub concept_b: String,
    pub mu_a: f64,
    pub mu_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_a_neg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_b_neg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_and: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_or: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_a_bneg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_aneg_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_aneg_bneg: Option<f64>,
}

impl MembershipRecord {
    pub fn new(item: &str, concept_a: &str, concept_b: &str, mu_a: f64, mu_b: f64) -> Self {
        Self {
            item: item.into(),
            concept_a: concept_a.into(),
            concept_b: concept_b.into(),
            mu_a,
            mu_b,
            mu_a_neg: None,
            mu_b_neg: None,
            mu_and: None,
            mu_or: None,
            mu_a_bneg: None,
            mu_aneg_b: None,
            mu_aneg_bneg: None,
        }
    }

    fn weights(&self) -> [(&'static str, Option<f64>); 9] {
        [
            ("mu_a", Some(self.mu_a)),
            ("mu_b", Some(self.mu_b)),
            ("mu_a_neg", self.mu_a_neg),
            ("mu_b_neg", self.mu_b_neg),
            ("mu_and", self.mu_and),
            ("mu_or", self.mu_or),
            ("mu_a_bneg", self.mu_a_bneg),
            ("mu_aneg_b", self.mu_aneg_b),
            ("mu_aneg_bneg", self.mu_aneg_bneg),
        ]
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.item.trim().is_empty() {
            return Err("missing item label".into());
        }
        for (name, w) in self.weights() {
            if let Some(w) = w {
                if !(0.0..=1.0).contains(&w) {
                    return Err(format!("{name} = {w} is outside [0, 1]"));
                }
            }
        }
        let combined = [self.mu_and, self.mu_or, self.mu_a_bneg, self.mu_aneg_b, self.mu_aneg_bneg];
        if combined.iter().all(Option::is_none) {
            return Err("no combination weight present".into());
        }
        Ok(())
    }

    pub fn pair(&self, connective: Connective) -> Option<PairWeights> {
        let combined = match connective {
            Connective::And => self.mu_and?,
            Connective::Or => self.mu_or?,
        };
        PairWeights::new(self.mu_a, self.mu_b, combined, connective).ok()
    }

    /// Conjunction-with-negation view, when all eight weights are present.
    pub fn negation(&self) -> Option<NegationRecord> {
        let weights = [
            self.mu_a,
            self.mu_b,
            self.mu_a_neg?,
            self.mu_b_neg?,
            self.mu_and?,
            self.mu_a_bneg?,
            self.mu_aneg_b?,
            self.mu_aneg_bneg?,
        ];
        NegationRecord::from_weights(weights).ok().map(|r| r.with_labels(&self.item, &self.concept_a, &self.concept_b))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Dataset {
    #[serde(default)]
    pub provenance: String,
    pub records: Vec<MembershipRecord>,
}

/// A row that was skipped while loading.
#[derive(Debug, Clone, PartialEq)]
pub struct RowError {
    /// 1-based line in a CSV file, or 1-based record position in JSON.
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Loaded {
    pub dataset: Dataset,
    pub rejected: Vec<RowError>,
    pub warnings: Vec<String>,
}

pub fn load_dataset(path: &Path, format: DataFormat) -> Result<Loaded, DatasetError> {
    let text = fs::read_to_string(path).map_err(|source| DatasetError::Io { path: path.into(), source })?;
    match format {
        DataFormat::Csv => parse_csv(&text),
        DataFormat::Json => parse_json(&text),
    }
}

pub fn parse_csv(text: &str) -> Result<Loaded, DatasetError> {
    let mut loaded = Loaded::default();
    loaded.dataset.provenance = text
        .lines()
        .map(str::trim_start)
        .take_while(|l| l.starts_with('#') || l.is_empty())
        .filter_map(|l| l.strip_prefix('#'))
        .map(|l| l.strip_prefix(' ').unwrap_or(l))
        .collect::<Vec<_>>()
        .join("\n");

    if text.lines().all(|l| l.trim().is_empty() || l.trim_start().starts_with('#')) {
        loaded.warnings.push("dataset is empty".into());
        return Ok(loaded);
    }

    let mut reader =
        csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(DatasetError::Header { found: header.iter().collect::<Vec<_>>().join(",") });
    }

    for row in reader.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                loaded.rejected.push(RowError { line, message: e.to_string() });
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        match record_from_row(&row).and_then(|r| r.validate().map(|()| r)) {
            Ok(record) => loaded.dataset.records.push(record),
            Err(message) => loaded.rejected.push(RowError { line, message }),
        }
    }
    if loaded.dataset.records.is_empty() && loaded.rejected.is_empty() {
        loaded.warnings.push("dataset is empty".into());
    }
    Ok(loaded)
}

fn record_from_row(row: &csv::StringRecord) -> Result<MembershipRecord, String> {
    if row.len() != CSV_HEADER.len() {
        return Err(format!("expected {} fields, found {}", CSV_HEADER.len(), row.len()));
    }
    let optional = |i: usize| -> Result<Option<f64>, String> {
        let cell = &row[i];
        if cell.is_empty() {
            return Ok(None);
        }
        cell.parse::<f64>().map(Some).map_err(|_| format!("{}: cannot parse `{cell}` as a number", CSV_HEADER[i]))
    };
    let required = |i: usize| optional(i)?.ok_or_else(|| format!("{} is required", CSV_HEADER[i]));
    Ok(MembershipRecord {
        item: row[0].to_string(),
        concept_a: row[1].to_string(),
        concept_b: row[2].to_string(),
        mu_a: required(3)?,
        mu_b: required(4)?,
        mu_a_neg: optional(5)?,
        mu_b_neg: optional(6)?,
        mu_and: optional(7)?,
        mu_or: optional(8)?,
        mu_a_bneg: optional(9)?,
        mu_aneg_b: optional(10)?,
        mu_aneg_bneg: optional(11)?,
    })
}

pub fn parse_json(text: &str) -> Result<Loaded, DatasetError> {
    let mut loaded = Loaded::default();
    if text.trim().is_empty() {
        loaded.warnings.push("dataset is empty".into());
        return Ok(loaded);
    }
    #[derive(Deserialize)]
    struct Raw {
        #[serde(default)]
        provenance: String,
        #[serde(default)]
        records: Vec<serde_json::Value>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    loaded.dataset.provenance = raw.provenance;
    for (i, value) in raw.records.into_iter().enumerate() {
        let line = i as u64 + 1;
        let parsed = serde_json::from_value::<MembershipRecord>(value)
            .map_err(|e| e.to_string())
            .and_then(|r| r.validate().map(|()| r));
        match parsed {
            Ok(record) => loaded.dataset.records.push(record),
            Err(message) => loaded.rejected.push(RowError { line, message }),
        }
    }
    if loaded.dataset.records.is_empty() && loaded.rejected.is_empty() {
        loaded.warnings.push("dataset is empty".into());
    }
    Ok(loaded)
}

/// Serializes a dataset so that [`parse_csv`] / [`parse_json`] read it back unchanged.
pub fn write_dataset(dataset: &Dataset, format: DataFormat) -> Vec<u8> {
    match format {
        DataFormat::Json => {
            let mut out = serde_json::to_vec_pretty(dataset).expect("dataset serializes");
            out.push(b'\n');
            out
        }
        DataFormat::Csv => {
            let mut out = String::new();
            for line in dataset.provenance.lines() {
                let _ = writeln!(out, "# {line}");
            }
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(CSV_HEADER).expect("in-memory write");
            for r in &dataset.records {
                let cell = |w: Option<f64>| w.map(|x| x.to_string()).unwrap_or_default();
                writer
                    .write_record([
                        r.item.clone(),
                        r.concept_a.clone(),
                        r.concept_b.clone(),
                        r.mu_a.to_string(),
                        r.mu_b.to_string(),
                        cell(r.mu_a_neg),
                        cell(r.mu_b_neg),
                        cell(r.mu_and),
                        cell(r.mu_or),
                        cell(r.mu_a_bneg),
                        cell(r.mu_aneg_b),
                        cell(r.mu_aneg_bneg),
                    ])
                    .expect("in-memory write");
            }
            out.push_str(&String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8"));
            out.into_bytes()
        }
    }
}
