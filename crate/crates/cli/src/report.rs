//! Report serialization.
//!
//! JSON reports carry a `schema` tag (`fockfit.report/1`, `fockfit.check/1`,
//! `fockfit.construct/1`) and mirror the structs in [`crate::analysis`].
//! CSV reports are long-format, one row per reported value:
//!
//! ```text
//! index,item,component,field,value
//! ```
//!
//! Plot data is tab-separated with one row per record and the columns
//! `item`, `n_sq`, `angle_deg`, `deviation_margin`.
//!
//! Pair records use their first combination (AND before OR) and report `θ`.
//! Records with only negation data report the mean quadrant `n²`, the `AB`
//! quadrant's `φ`, and the largest absolute classicality residual as margin.
//! Unavailable values are left blank.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{
    AnalysisReport, CheckReport, ConstructOutcome, ConstructReport, NegationAnalysis, PairAnalysis, PairFitOutcome,
    RecordAnalysis,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Plotdata,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{format} output is not available for {report} reports")]
pub struct UnsupportedFormat {
    pub format: &'static str,
    pub report: &'static str,
}

pub const PLOTDATA_HEADER: [&str; 4] = ["item", "n_sq", "angle_deg", "deviation_margin"];
pub const CSV_REPORT_HEADER: [&str; 5] = ["index", "item", "component", "field", "value"];

pub fn emit_report(report: &AnalysisReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => json(report),
        ReportFormat::Csv => {
            let mut rows = Rows::default();
            for r in &report.records {
                analysis_rows(&mut rows, r);
            }
            rows.finish()
        }
        ReportFormat::Plotdata => plotdata(&report.records),
    }
}

pub fn emit_check(report: &CheckReport, format: ReportFormat) -> Result<Vec<u8>, UnsupportedFormat> {
    match format {
        ReportFormat::Json => Ok(json(report)),
        ReportFormat::Csv => {
            let mut rows = Rows::default();
            for r in &report.records {
                let mut row = rows.record(r.index, &r.item, "classicality");
                for (i, v) in r.classicality.residuals.iter().enumerate() {
                    row.push(&format!("residual_{}", i + 1), v);
                }
                row.push("classical", r.classicality.classical);
                row.push("kolmogorov", r.kolmogorov);
            }
            Ok(rows.finish())
        }
        ReportFormat::Plotdata => Err(UnsupportedFormat { format: "plotdata", report: "check" }),
    }
}

pub fn emit_construct(report: &ConstructReport, format: ReportFormat) -> Result<Vec<u8>, UnsupportedFormat> {
    match format {
        ReportFormat::Json => Ok(json(report)),
        ReportFormat::Csv => {
            let mut rows = Rows::default();
            for r in &report.records {
                let mut row = rows.record(r.index, &r.item, "entangled");
                match &r.outcome {
                    ConstructOutcome::Constructed(s) => {
                        row.push("status", "constructed");
                        for (label, a) in ["c11", "c12", "c21", "c22"].iter().zip(s.amplitudes) {
                            row.push(label, a);
                        }
                        row.push("product_state", s.product_state);
                        row.push("max_readback_error", s.max_readback_error);
                    }
                    ConstructOutcome::Rejected { residuals } => {
                        row.push("status", "rejected");
                        for (i, v) in residuals.iter().enumerate() {
                            row.push(&format!("residual_{}", i + 1), v);
                        }
                    }
                    ConstructOutcome::Error { message } => {
                        row.push("status", "error");
                        row.push("message", message);
                    }
                }
            }
            Ok(rows.finish())
        }
        ReportFormat::Plotdata => Err(UnsupportedFormat { format: "plotdata", report: "construct" }),
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report serializes");
    out.push(b'\n');
    out
}

#[derive(Default)]
struct Rows {
    records: Vec<[String; 5]>,
}

struct RowBuilder<'a> {
    rows: &'a mut Rows,
    index: String,
    item: String,
    component: String,
}

impl Rows {
    fn record(&mut self, index: usize, item: &str, component: &str) -> RowBuilder<'_> {
        RowBuilder { rows: self, index: index.to_string(), item: item.into(), component: component.into() }
    }

    fn finish(self) -> Vec<u8> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(CSV_REPORT_HEADER).expect("in-memory write");
        for row in &self.records {
            writer.write_record(row).expect("in-memory write");
        }
        writer.into_inner().expect("flush")
    }
}

impl RowBuilder<'_> {
    fn push(&mut self, field: &str, value: impl ToString) {
        self.rows.records.push([
            self.index.clone(),
            self.item.clone(),
            self.component.clone(),
            field.into(),
            value.to_string(),
        ]);
    }
}

fn analysis_rows(rows: &mut Rows, r: &RecordAnalysis) {
    for pair in &r.combinations {
        let mut row = rows.record(r.index, &r.item, pair.connective);
        row.push("deviation", pair.deviation.kind);
        row.push("deviation_margin", pair.deviation.margin);
        row.push("feasible_lo", pair.feasibility.lo);
        row.push("feasible_hi", pair.feasibility.hi);
        match &pair.fit {
            PairFitOutcome::Fitted { m_sq, n_sq, theta_deg, residual } => {
                row.push("status", "fitted");
                row.push("m_sq", m_sq);
                row.push("n_sq", n_sq);
                row.push("theta_deg", theta_deg);
                row.push("residual", residual);
            }
            PairFitOutcome::Infeasible { .. } => row.push("status", "infeasible"),
            PairFitOutcome::Error { message } => {
                row.push("status", "error");
                row.push("message", message);
            }
        }
        if let Some(v) = &pair.verification {
            row.push("oracle_agrees", v.agrees);
        }
    }
    if let Some(neg) = &r.negation {
        let mut row = rows.record(r.index, &r.item, "classicality");
        for (i, v) in neg.classicality.residuals.iter().enumerate() {
            row.push(&format!("residual_{}", i + 1), v);
        }
        row.push("classical", neg.classicality.classical);
        row.push("kolmogorov", neg.kolmogorov);
        for q in &neg.fit.quadrants {
            let mut row = rows.record(r.index, &r.item, &format!("quadrant {}", q.quadrant));
            row.push("m", q.m);
            row.push("n", q.n);
            row.push("phi_deg", q.phi_deg);
            row.push("alpha", q.alpha);
            row.push("beta", q.beta);
            row.push("residual", q.residual);
        }
        if let Some(ok) = neg.grid_validated {
            rows.record(r.index, &r.item, "negation fit").push("grid_validated", ok);
        }
    }
    for e in &r.errors {
        rows.record(r.index, &r.item, "error").push("message", e);
    }
}

fn plotdata(records: &[RecordAnalysis]) -> Vec<u8> {
    let mut out = PLOTDATA_HEADER.join("\t");
    out.push('\n');
    for r in records {
        let [n_sq, angle, margin] = match (r.combinations.first(), &r.negation) {
            (Some(pair), _) => pair_point(pair),
            (None, Some(neg)) => negation_point(neg),
            (None, None) => [None; 3],
        };
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let item = r.item.replace(['\t', '\n'], " ");
        let _ = writeln!(out, "{item}\t{}\t{}\t{}", cell(n_sq), cell(angle), cell(margin));
    }
    out.into_bytes()
}

fn pair_point(pair: &PairAnalysis) -> [Option<f64>; 3] {
    let margin = Some(pair.deviation.margin);
    match pair.fit {
        PairFitOutcome::Fitted { n_sq, theta_deg, .. } => [Some(n_sq), Some(theta_deg), margin],
        _ => [None, None, margin],
    }
}

fn negation_point(neg: &NegationAnalysis) -> [Option<f64>; 3] {
    let quads = &neg.fit.quadrants;
    let n_sq = (!quads.is_empty()).then(|| quads.iter().map(|q| q.n_sq).sum::<f64>() / quads.len() as f64);
    let phi = quads.first().map(|q| q.phi_deg);
    let margin = neg.classicality.residuals.iter().map(|r| r.abs()).fold(0.0, f64::max);
    [n_sq, phi, Some(margin)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{run_analysis, AnalysisConfig};
    use crate::dataset::{Dataset, MembershipRecord};

    fn goldfish() -> MembershipRecord {
        let mut r = MembershipRecord::new("Goldfish", "Pets", "Farmyard Animals", 0.93, 0.17);
        r.mu_a_neg = Some(0.12);
        r.mu_b_neg = Some(0.81);
        r.mu_and = Some(0.43);
        r.mu_a_bneg = Some(0.91);
        r.mu_aneg_b = Some(0.18);
        r.mu_aneg_bneg = Some(0.43);
        r
    }

    #[test]
    fn empty_report_documents() {
        let report = run_analysis(&Dataset::default(), &AnalysisConfig::default());
        let value: serde_json::Value = serde_json::from_slice(&emit_report(&report, ReportFormat::Json)).unwrap();
        assert_eq!(value["schema"], "fockfit.report/1");
        assert_eq!(value["records"].as_array().unwrap().len(), 0);
        assert_eq!(emit_report(&report, ReportFormat::Csv), b"index,item,component,field,value\n");
        assert_eq!(emit_report(&report, ReportFormat::Plotdata), b"item\tn_sq\tangle_deg\tdeviation_margin\n");
    }

    #[test]
    fn goldfish_json_has_five_residuals() {
        let ds = Dataset { provenance: String::new(), records: vec![goldfish()] };
        let report = run_analysis(&ds, &AnalysisConfig::default());
        let value: serde_json::Value = serde_json::from_slice(&emit_report(&report, ReportFormat::Json)).unwrap();
        let residuals = value["records"][0]["negation"]["classicality"]["residuals"].as_array().unwrap();
        assert_eq!(residuals.len(), 5);
        assert!((residuals[0].as_f64().unwrap() + 0.41).abs() < 1e-9);
        assert_eq!(value["records"][0]["negation"]["classicality"]["classical"], false);
    }

    #[test]
    fn plotdata_uses_negation_fallback() {
        let mut neg_only = goldfish();
        neg_only.item = "Only\tnegation".into();
        let ds = Dataset { provenance: String::new(), records: vec![neg_only] };
        let mut report = run_analysis(&ds, &AnalysisConfig::default());
        report.records[0].combinations.clear();
        let text = String::from_utf8(emit_report(&report, ReportFormat::Plotdata)).unwrap();
        let line = text.lines().nth(1).unwrap();
        let cells: Vec<_> = line.split('\t').collect();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0], "Only negation");
        assert!((cells[3].parse::<f64>().unwrap() - 0.95).abs() < 1e-9);
    }

    #[test]
    fn check_rejects_plotdata() {
        let ds = Dataset { provenance: String::new(), records: vec![goldfish()] };
        let check = crate::analysis::run_check(&ds, 1e-6);
        assert!(emit_check(&check, ReportFormat::Plotdata).is_err());
        let csv = String::from_utf8(emit_check(&check, ReportFormat::Csv).unwrap()).unwrap();
        assert_eq!(csv.lines().count(), 1 + 7);
    }
}
