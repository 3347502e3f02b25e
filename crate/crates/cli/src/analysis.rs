//! Batch analysis of a dataset.

use std::collections::BTreeMap;

use fockfit_core::negation::classicality_conditions_with;
use fockfit_core::oracles::{bisect_theta, grid_validate_fit, OracleConfig};
use fockfit_core::{
    classify_deviation, combination::combined_weight, construct_entangled, feasibility_interval, fit_negation_model,
    fit_pair, kolmogorov_oracle, sector2_marginal_check, tol, Connective, Error, FitStrategy, FockParams,
    NegationFitConfig, NegationRecord, PairWeights, Quadrant,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::{Dataset, MembershipRecord};

pub const REPORT_SCHEMA: &str = "fockfit.report/1";
pub const CHECK_SCHEMA: &str = "fockfit.check/1";
pub const CONSTRUCT_SCHEMA: &str = "fockfit.construct/1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub strategy: FitStrategy,
    pub classicality_tolerance: f64,
    pub seed: u64,
    pub starts: usize,
    /// Run the brute-force oracles next to each fit.
    pub verify: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            strategy: FitStrategy::MaxSector1,
            classicality_tolerance: tol::CLASSICALITY,
            seed: 0,
            starts: NegationFitConfig::default().starts,
            verify: false,
        }
    }
}

pub fn strategy_label(strategy: FitStrategy) -> String {
    match strategy {
        FitStrategy::FixM2(v) => format!("fix-m2={v}"),
        FitStrategy::MaxSector1 => "max-sector1".into(),
        FitStrategy::MinInterference => "min-interference".into(),
    }
}

pub fn connective_label(connective: Connective) -> &'static str {
    match connective {
        Connective::And => "AND",
        Connective::Or => "OR",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub strategy: String,
    pub classicality_tolerance: f64,
    pub seed: u64,
    pub starts: usize,
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub provenance: String,
    pub config: ConfigEcho,
    pub records: Vec<RecordAnalysis>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordAnalysis {
    pub index: usize,
    pub item: String,
    pub concept_a: String,
    pub concept_b: String,
    pub combinations: Vec<PairAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negation: Option<NegationAnalysis>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairAnalysis {
    pub connective: &'static str,
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_combined: f64,
    pub deviation: Deviation,
    pub feasibility: Interval,
    pub fit: PairFitOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<ThetaCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub kind: &'static str,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PairFitOutcome {
    Fitted { m_sq: f64, n_sq: f64, theta_deg: f64, residual: f64 },
    Infeasible { lo: f64, hi: f64 },
    Error { message: String },
}

/// Algebraic angle next to the bisection oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaCheck {
    pub theta_deg: f64,
    pub bisected_deg: Option<f64>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegationAnalysis {
    pub classicality: Classicality,
    pub kolmogorov: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entangled: Option<EntangledSummary>,
    pub fit: NegationFitSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_validated: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classicality {
    pub residuals: [f64; 5],
    pub classical: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntangledSummary {
    /// Real amplitudes of `|C>` on `e1⊗e1, e1⊗e2, e2⊗e1, e2⊗e2`.
    pub amplitudes: [f64; 4],
    pub product_state: bool,
    /// `μA, μB, μA', μB', μ(AB), μ(AB'), μ(A'B), μ(A'B')`.
    pub readback: [f64; 8],
    pub max_readback_error: f64,
    pub marginal_residuals: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegationFitSummary {
    pub quadrants: Vec<QuadrantFit>,
    pub total_squared_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadrantFit {
    pub quadrant: &'static str,
    pub m: f64,
    pub n: f64,
    pub n_sq: f64,
    pub phi_deg: f64,
    pub alpha: f64,
    pub beta: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Summary {
    pub records: usize,
    pub combinations: usize,
    pub deviations: BTreeMap<&'static str, usize>,
    pub fitted: usize,
    pub infeasible: usize,
    pub negation_records: usize,
    pub classical: usize,
    pub non_classical: usize,
    /// Distribution of the sector-1 participation `n²` over every successful fit.
    pub sector1: Sector1Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification_failures: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Sector1Stats {
    pub count: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    /// Fits with `n² > 0.5`.
    pub dominant: usize,
}

impl Sector1Stats {
    fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        let count = values.len();
        if count == 0 {
            return Self::default();
        }
        let median = if count % 2 == 1 { values[count / 2] } else { 0.5 * (values[count / 2 - 1] + values[count / 2]) };
        Self {
            count,
            mean: Some(values.iter().sum::<f64>() / count as f64),
            median: Some(median),
            min: values.first().copied(),
            max: values.last().copied(),
            dominant: values.iter().filter(|&&x| x > 0.5).count(),
        }
    }
}

/// Analyzes every record; per-record failures are embedded, never fatal.
pub fn run_analysis(dataset: &Dataset, config: &AnalysisConfig) -> AnalysisReport {
    let records: Vec<RecordAnalysis> =
        dataset.records.par_iter().enumerate().map(|(index, record)| analyze_record(index, record, config)).collect();
    let summary = summarize(&records, config.verify);
    AnalysisReport {
        schema: REPORT_SCHEMA,
        provenance: dataset.provenance.clone(),
        config: ConfigEcho {
            strategy: strategy_label(config.strategy),
            classicality_tolerance: config.classicality_tolerance,
            seed: config.seed,
            starts: config.starts,
            verify: config.verify,
        },
        records,
        summary,
    }
}

fn analyze_record(index: usize, record: &MembershipRecord, config: &AnalysisConfig) -> RecordAnalysis {
    let mut errors = Vec::new();
    let mut combinations = Vec::new();
    for connective in [Connective::And, Connective::Or] {
        let combined = match connective {
            Connective::And => record.mu_and,
            Connective::Or => record.mu_or,
        };
        let Some(combined) = combined else { continue };
        match PairWeights::new(record.mu_a, record.mu_b, combined, connective) {
            Ok(pair) => combinations.push(analyze_pair(&pair, config)),
            Err(e) => errors.push(format!("{}: {e}", connective_label(connective))),
        }
    }
    let negation = record.negation().map(|neg| analyze_negation(&neg, config, &mut errors));
    RecordAnalysis {
        index,
        item: record.item.clone(),
        concept_a: record.concept_a.clone(),
        concept_b: record.concept_b.clone(),
        combinations,
        negation,
        errors,
    }
}

fn analyze_pair(pair: &PairWeights, config: &AnalysisConfig) -> PairAnalysis {
    let deviation = classify_deviation(pair);
    let interval = feasibility_interval(pair.mu_a, pair.mu_b, pair.connective)
        .map(|iv| Interval { lo: iv.lo, hi: iv.hi })
        .unwrap_or(Interval { lo: f64::NAN, hi: f64::NAN });
    let (fit, verification) = match fit_pair(pair, config.strategy) {
        Ok(fit) => {
            let p = fit.params;
            let verification = config.verify.then(|| check_theta(pair, &p));
            let outcome =
                PairFitOutcome::Fitted { m_sq: p.m_sq, n_sq: p.n_sq, theta_deg: p.theta_deg, residual: fit.residual };
            (outcome, verification)
        }
        Err(Error::Infeasible { lo, hi, .. }) => (PairFitOutcome::Infeasible { lo, hi }, None),
        Err(e) => (PairFitOutcome::Error { message: e.to_string() }, None),
    };
    PairAnalysis {
        connective: connective_label(pair.connective),
        mu_a: pair.mu_a,
        mu_b: pair.mu_b,
        mu_combined: pair.mu_combined,
        deviation: Deviation { kind: deviation.kind.as_str(), margin: deviation.margin },
        feasibility: interval,
        fit,
        verification,
    }
}

fn check_theta(pair: &PairWeights, params: &FockParams) -> ThetaCheck {
    let forward = |theta: f64| {
        let p = FockParams { theta_deg: theta, ..*params };
        combined_weight(pair.connective, pair.mu_a, pair.mu_b, &p).unwrap_or(f64::NAN)
    };
    let flat = (forward(0.0) - forward(180.0)).abs() <= tol::ALGEBRAIC_FIT;
    let bisected = bisect_theta(forward, pair.mu_combined).ok();
    // with n²β = 0 every angle fits and only the residual is checkable
    let agrees = flat || bisected.is_some_and(|b| (b - params.theta_deg).abs() <= 1e-6);
    ThetaCheck { theta_deg: params.theta_deg, bisected_deg: bisected, agrees }
}

fn analyze_negation(record: &NegationRecord, config: &AnalysisConfig, errors: &mut Vec<String>) -> NegationAnalysis {
    let report = classicality_conditions_with(record, config.classicality_tolerance);
    let entangled = match construct_entangled(record) {
        Ok(real) => summarize_entangled(record, &real).map_err(|e| errors.push(format!("construct: {e}"))).ok(),
        Err(Error::NonClassical(_)) => None,
        Err(e) => {
            errors.push(format!("construct: {e}"));
            None
        }
    };
    let fit_config = NegationFitConfig { seed: config.seed, starts: config.starts };
    let (fit, grid_validated) = match fit_negation_model(record, &fit_config) {
        Ok(fit) => {
            let grid = config.verify.then(|| {
                let oracle = OracleConfig { seed: config.seed, ..OracleConfig::default() };
                grid_validate_fit(record, &fit.params, &oracle)
            });
            let quadrants = Quadrant::ALL
                .iter()
                .map(|&q| {
                    let p = fit.params.get(q);
                    QuadrantFit {
                        quadrant: q.label(),
                        m: p.m,
                        n: p.n,
                        n_sq: p.n_sq(),
                        phi_deg: p.phi_deg,
                        alpha: p.alpha,
                        beta: p.beta,
                        residual: fit.residuals[q.index()],
                    }
                })
                .collect();
            let summary = NegationFitSummary { quadrants, total_squared_residual: fit.total_squared_residual() };
            (summary, grid)
        }
        Err(e) => {
            errors.push(format!("negation fit: {e}"));
            (NegationFitSummary { quadrants: Vec::new(), total_squared_residual: f64::NAN }, None)
        }
    };
    NegationAnalysis {
        classicality: Classicality {
            residuals: report.residuals,
            classical: report.classical,
            tolerance: report.tolerance,
        },
        kolmogorov: kolmogorov_oracle(record),
        entangled,
        fit,
        grid_validated,
    }
}

pub fn summarize_entangled(
    record: &NegationRecord,
    real: &fockfit_core::EntangledRealization,
) -> Result<EntangledSummary, Error> {
    let readback = real.readback()?;
    let c = real.state_c.components();
    let max_readback_error = readback.iter().zip(record.weights()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(EntangledSummary {
        amplitudes: [c[0].re, c[1].re, c[2].re, c[3].re],
        product_state: real.is_product(),
        readback,
        max_readback_error,
        marginal_residuals: sector2_marginal_check(real)?,
    })
}

fn summarize(records: &[RecordAnalysis], verify: bool) -> Summary {
    let mut summary = Summary { records: records.len(), ..Summary::default() };
    let mut n_sq = Vec::new();
    let mut failures = 0;
    for r in records {
        for pair in &r.combinations {
            summary.combinations += 1;
            *summary.deviations.entry(pair.deviation.kind).or_default() += 1;
            match &pair.fit {
                PairFitOutcome::Fitted { n_sq: v, .. } => {
                    summary.fitted += 1;
                    n_sq.push(*v);
                }
                PairFitOutcome::Infeasible { .. } => summary.infeasible += 1,
                PairFitOutcome::Error { .. } => {}
            }
            if pair.verification.as_ref().is_some_and(|v| !v.agrees) {
                failures += 1;
            }
        }
        if let Some(neg) = &r.negation {
            summary.negation_records += 1;
            if neg.classicality.classical {
                summary.classical += 1;
            } else {
                summary.non_classical += 1;
            }
            n_sq.extend(neg.fit.quadrants.iter().map(|q| q.n_sq));
            if neg.grid_validated == Some(false) {
                failures += 1;
            }
        }
    }
    summary.sector1 = Sector1Stats::from_values(n_sq);
    summary.verification_failures = verify.then_some(failures);
    summary
}

/// Classicality verdicts for the records that carry all eight weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub provenance: String,
    pub tolerance: f64,
    pub records: Vec<CheckEntry>,
    pub classical: usize,
    pub non_classical: usize,
    /// Records without negation data.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub index: usize,
    pub item: String,
    pub classicality: Classicality,
    pub kolmogorov: bool,
}

pub fn run_check(dataset: &Dataset, tolerance: f64) -> CheckReport {
    let mut report = CheckReport {
        schema: CHECK_SCHEMA,
        provenance: dataset.provenance.clone(),
        tolerance,
        records: Vec::new(),
        classical: 0,
        non_classical: 0,
        skipped: 0,
    };
    for (index, record) in dataset.records.iter().enumerate() {
        let Some(neg) = record.negation() else {
            report.skipped += 1;
            continue;
        };
        let c = classicality_conditions_with(&neg, tolerance);
        if c.classical {
            report.classical += 1;
        } else {
            report.non_classical += 1;
        }
        report.records.push(CheckEntry {
            index,
            item: record.item.clone(),
            classicality: Classicality { residuals: c.residuals, classical: c.classical, tolerance },
            kolmogorov: kolmogorov_oracle(&neg),
        });
    }
    report
}

/// Sector-2 realizations for the classical records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructReport {
    pub schema: &'static str,
    pub provenance: String,
    pub records: Vec<ConstructEntry>,
    /// Records without negation data.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructEntry {
    pub index: usize,
    pub item: String,
    #[serde(flatten)]
    pub outcome: ConstructOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConstructOutcome {
    Constructed(EntangledSummary),
    Rejected { residuals: [f64; 5] },
    Error { message: String },
}

pub fn run_construct(dataset: &Dataset) -> ConstructReport {
    let mut report = ConstructReport {
        schema: CONSTRUCT_SCHEMA,
        provenance: dataset.provenance.clone(),
        records: Vec::new(),
        skipped: 0,
    };
    for (index, record) in dataset.records.iter().enumerate() {
        let Some(neg) = record.negation() else {
            report.skipped += 1;
            continue;
        };
        let outcome = match construct_entangled(&neg).and_then(|real| summarize_entangled(&neg, &real)) {
            Ok(summary) => ConstructOutcome::Constructed(summary),
            Err(Error::NonClassical(c)) => ConstructOutcome::Rejected { residuals: c.residuals },
            Err(e) => ConstructOutcome::Error { message: e.to_string() },
        };
        report.records.push(ConstructEntry { index, item: record.item.clone(), outcome });
    }
    report
}
