//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p fockfit --test acceptance`. The target exits
//! non-zero on any outcome other than the recorded one.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fockfit_core::negation::classicality_conditions_with;
use fockfit_core::oracles::{bisect_theta, grid_validate_fit, sample_classical_records, OracleConfig};
use fockfit_core::{
    classicality_conditions, classify_deviation, conjunction_weight, construct_entangled, disjunction_weight,
    fit_negation_model, fit_pair, interference_magnitude, kolmogorov_oracle, negation_conjunction_weight, solve_theta,
    tol, ComplexVector, Connective, DeviationKind, FitStrategy, FockParams, NegationFitConfig, NegationRecord,
    PairWeights, Projector, Quadrant, QuadrantParams, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot be met by any parameter set; they are still
/// evaluated in full and must keep failing for the reason recorded.
const KNOWN_UNATTAINABLE: &[&str] = &["AC5"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    checks: Vec<(String, bool)>,
    elapsed: Duration,
    limit: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.elapsed < self.limit && self.checks.iter().all(|(_, ok)| *ok)
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {} {} ({:.3}s, limit {}s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        for (detail, ok) in &self.checks {
            println!("    [{}] {detail}", if *ok { "ok" } else { "FAILED" });
        }
    }
}

fn criterion(
    id: &'static str,
    title: &'static str,
    limit_secs: u64,
    body: impl FnOnce(&mut Vec<(String, bool)>),
) -> Outcome {
    let start = Instant::now();
    let mut checks = Vec::new();
    body(&mut checks);
    Outcome { id, title, checks, elapsed: start.elapsed(), limit: Duration::from_secs(limit_secs) }
}

fn check(checks: &mut Vec<(String, bool)>, ok: bool, detail: String) {
    checks.push((detail, ok));
}

/// θ by inversion, forward reproduction and bisection agreement at fixed `m²`.
fn theta_protocol(checks: &mut Vec<(String, bool)>, pair: PairWeights, m_sq: f64, printed_theta: f64) {
    let forward = |theta: f64| {
        let p = FockParams::new(m_sq, theta).unwrap();
        match pair.connective {
            Connective::And => conjunction_weight(pair.mu_a, pair.mu_b, &p).unwrap(),
            Connective::Or => disjunction_weight(pair.mu_a, pair.mu_b, &p).unwrap(),
        }
    };
    match solve_theta(pair.mu_a, pair.mu_b, pair.mu_combined, m_sq, pair.connective) {
        Ok(theta) => {
            let reproduced = forward(theta);
            check(
                checks,
                (reproduced - pair.mu_combined).abs() <= tol::ALGEBRAIC_FIT,
                format!("θ = {theta:.6}° reproduces {reproduced:.12} (target {})", pair.mu_combined),
            );
            match bisect_theta(forward, pair.mu_combined) {
                Ok(b) => check(
                    checks,
                    (b - theta).abs() <= 1e-6,
                    format!("bisection θ = {b:.9}°, |Δ| = {:.2e}°", (b - theta).abs()),
                ),
                Err(e) => check(checks, false, format!("bisection failed: {e}")),
            }
        }
        Err(e) => check(checks, false, format!("solve_theta: {e}")),
    }
    check(checks, true, format!("metadata: printed θ = {printed_theta}°, not an acceptance target"));
}

fn goldfish() -> NegationRecord {
    NegationRecord::from_weights([0.93, 0.17, 0.12, 0.81, 0.43, 0.91, 0.18, 0.43]).unwrap().with_labels(
        "Goldfish",
        "Pets",
        "Farmyard Animals",
    )
}

fn published_goldfish_params() -> [QuadrantParams; 4] {
    [
        QuadrantParams::new(0.45, 0.89, 78.9, 0.35, -0.24),
        QuadrantParams::new(0.45, 0.9, 43.15, 0.9, 0.10),
        QuadrantParams::new(0.48, 0.88, 54.74, 0.22, 0.12),
        QuadrantParams::new(0.45, 0.89, 77.94, 0.17, 0.30),
    ]
}

fn ac1() -> Outcome {
    criterion("AC1", "Mint AND, m² = 0.3: equation-consistent θ, oracle-agreed", 1, |c| {
        theta_protocol(c, PairWeights::and(0.87, 0.81, 0.9).unwrap(), 0.3, 50.21);
    })
}

fn ac2() -> Outcome {
    criterion("AC2", "Sunglasses OR, m² = 0.03: equation-consistent θ, oracle-agreed", 1, |c| {
        theta_protocol(c, PairWeights::or(0.4, 0.2, 0.1).unwrap(), 0.03, 155.00);
    })
}

fn ac3() -> Outcome {
    criterion("AC3", "borderline contradiction forward AND within 0.02", 1, |c| {
        let p = FockParams::new(0.77, 0.0).unwrap();
        let w = conjunction_weight(0.01, 0.95, &p).unwrap();
        check(c, (w - 0.15).abs() <= 0.02, format!("μ(A and A') = {w:.6}, measured 0.15"));
    })
}

fn ac4() -> Outcome {
    criterion("AC4", "Goldfish non-classical, published parameters and fit", 10, |c| {
        let rec = goldfish();
        let report = classicality_conditions(&rec);
        let [r_a, .., r_norm] = report.residuals;
        check(
            c,
            (r_a + 0.41).abs() <= 1e-9 && r_a.abs() > report.tolerance,
            format!("μ(A) marginal residual {r_a:.6}"),
        );
        check(
            c,
            (r_norm - 0.95).abs() <= 1e-9 && r_norm.abs() > report.tolerance,
            format!("normalization residual {r_norm:.6}"),
        );
        check(c, !report.classical, format!("classical = {}", report.classical));

        for (q, p) in Quadrant::ALL.into_iter().zip(published_goldfish_params()) {
            let (x, y) = rec.constituents(q);
            match negation_conjunction_weight(x, y, &p) {
                Ok(w) => {
                    let target = rec.conjunction(q);
                    check(
                        c,
                        (w - target).abs() <= tol::PUBLISHED,
                        format!("published {}: {w:.4} vs {target}", q.label()),
                    );
                }
                Err(e) => check(c, false, format!("published {}: {e}", q.label())),
            }
        }

        match fit_negation_model(&rec, &NegationFitConfig::default()) {
            Ok(fit) => {
                for q in Quadrant::ALL {
                    let r = fit.residuals[q.index()];
                    check(c, r <= tol::PUBLISHED, format!("fitted {} residual {r:.2e}", q.label()));
                }
                let ok = grid_validate_fit(&rec, &fit.params, &OracleConfig::default());
                check(c, ok, "grid_validate_fit at resolution 200".into());
            }
            Err(e) => check(c, false, format!("fit_negation_model: {e}")),
        }
    })
}

fn ac5() -> Outcome {
    criterion("AC5", "Olive OR and AND: classification and feasible fits", 1, |c| {
        let or = PairWeights::or(0.5, 0.1, 0.8).unwrap();
        let and = PairWeights::and(0.56, 0.63, 0.65).unwrap();
        let d_or = classify_deviation(&or);
        check(
            c,
            d_or.kind == DeviationKind::DoubleOverextended && (d_or.margin - 0.2).abs() <= 1e-9,
            format!("OR classified {} margin {:.4}", d_or.kind.as_str(), d_or.margin),
        );
        let d_and = classify_deviation(&and);
        check(
            c,
            d_and.kind == DeviationKind::DoubleOverextended && (d_and.margin - 0.02).abs() <= 1e-9,
            format!("AND classified {} margin {:.4}", d_and.kind.as_str(), d_and.margin),
        );
        for (label, pair) in [("OR", or), ("AND", and)] {
            match fit_pair(&pair, FitStrategy::MaxSector1) {
                Ok(fit) => {
                    check(c, fit.residual <= tol::ALGEBRAIC_FIT, format!("{label} fit residual {:.2e}", fit.residual))
                }
                Err(e) => check(c, false, format!("{label} fit: {e}")),
            }
        }
    })
}

fn perturbed(rng: &mut ChaCha8Rng, base: &NegationRecord) -> NegationRecord {
    let mut w = base.weights();
    let slot = rng.gen_range(0..8);
    let size = 10f64.powf(rng.gen_range(-6.0..-2.0));
    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    w[slot] = (w[slot] + sign * size).clamp(0.0, 1.0);
    if w[slot] == base.weights()[slot] {
        // clamped back onto the original value; push inward instead
        w[slot] = (w[slot] - sign * size).clamp(0.0, 1.0);
    }
    NegationRecord::from_weights(w).unwrap()
}

fn ac6() -> Outcome {
    criterion("AC6", "classicality theorem on 1000 seeded records", 30, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
        let sampled = sample_classical_records(400, 7);
        let mut records = sampled.clone();
        for base in sampled.iter().take(300) {
            records.push(perturbed(&mut rng, base));
        }
        while records.len() < 1000 {
            let w: [f64; 8] = std::array::from_fn(|_| rng.gen::<f64>());
            records.push(NegationRecord::from_weights(w).unwrap());
        }

        let (mut agree, mut built, mut classical, mut readback_ok, mut mismatched) = (0, 0, 0, 0, 0);
        for rec in &records {
            let conditions = classicality_conditions_with(rec, tol::CLASSICALITY_STRICT).classical;
            let oracle = kolmogorov_oracle(rec);
            agree += usize::from(conditions == oracle);
            classical += usize::from(conditions);
            match construct_entangled(rec) {
                Ok(real) => {
                    built += 1;
                    mismatched += usize::from(!conditions);
                    let rb = real.readback().unwrap();
                    let err = rb.iter().zip(rec.weights()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                    readback_ok += usize::from(err <= tol::BORN_READBACK);
                }
                Err(_) => mismatched += usize::from(conditions),
            }
        }
        check(c, records.len() == 1000, format!("{} records, {classical} classical at 1e-9", records.len()));
        check(c, agree == records.len(), format!("oracle ⇔ conditions on {agree}/{}", records.len()));
        check(
            c,
            mismatched == 0 && built == classical,
            format!("construct_entangled succeeded on {built}, mismatches {mismatched}"),
        );
        check(c, readback_ok == built, format!("Born readbacks within 1e-10 on {readback_ok}/{built}"));
    })
}

fn random_projector(rng: &mut ChaCha8Rng, dim: usize) -> Projector {
    let rank = rng.gen_range(0..=dim);
    let vs: Vec<ComplexVector> = (0..rank)
        .map(|_| {
            ComplexVector::new((0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
                .unwrap()
        })
        .collect();
    Projector::onto_span(dim, &vs).unwrap()
}

fn ac7() -> Outcome {
    criterion("AC7", "de Morgan, branch equivalence, complement additivity", 10, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst: f64 = 0.0;
        for dim in 2..=4 {
            for _ in 0..100 {
                let m = random_projector(&mut rng, dim);
                let id = Projector::identity(dim).unwrap();
                let lhs = m.tensor(&id).add(&id.tensor(&m)).unwrap().sub(&m.tensor(&m)).unwrap();
                let rhs = id.tensor(&id).sub(&m.complement().tensor(&m.complement())).unwrap();
                let diff =
                    lhs.as_row_major().iter().zip(rhs.as_row_major()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                worst = worst.max(diff);
            }
        }
        check(c, worst <= 1e-12, format!("de Morgan max entrywise deviation {worst:.2e} over dims 2-4"));

        let mut mismatches = 0;
        for _ in 0..10_000 {
            let (a, b): (f64, f64) = (rng.gen(), rng.gen());
            let min_form = (a * b).sqrt().min(((1.0 - a) * (1.0 - b)).sqrt());
            mismatches += usize::from(interference_magnitude(a, b).unwrap() != min_form);
        }
        check(c, mismatches == 0, format!("branch form differs from min form on {mismatches}/10000 pairs"));

        let mut worst: f64 = 0.0;
        for dim in 2..=4 {
            for _ in 0..200 {
                let m = random_projector(&mut rng, dim);
                let raw: Vec<C64> =
                    (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let Ok(state) = ComplexVector::new(raw).and_then(|v| v.normalized()) else {
                    continue;
                };
                let total = m.weight(&state).unwrap() + m.complement().weight(&state).unwrap();
                worst = worst.max((total - 1.0).abs());
            }
        }
        check(c, worst <= tol::BORN_READBACK, format!("complement additivity max deviation {worst:.2e}"));
    })
}

fn ac8() -> Outcome {
    criterion("AC8", "analyze is byte-identical across runs", 60, |c| {
        let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_fockfit"))
                .args(["analyze", "paper", "--seed", "11"])
                .env("FOCKFIT_DATA_DIR", &data)
                .output()
                .expect("binary runs")
        };
        let (first, second) = (run(), run());
        check(
            c,
            first.status.success() && second.status.success(),
            format!("exit {:?} / {:?}", first.status.code(), second.status.code()),
        );
        check(c, !first.stdout.is_empty(), format!("{} bytes", first.stdout.len()));
        check(c, first.stdout == second.stdout, "outputs identical".into());
    })
}

fn main() {
    let outcomes = [ac1(), ac2(), ac3(), ac4(), ac5(), ac6(), ac7(), ac8()];
    for o in &outcomes {
        o.print();
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("{passed}/{} criteria passed", outcomes.len());

    let mut unexpected = Vec::new();
    for o in &outcomes {
        let known = KNOWN_UNATTAINABLE.contains(&o.id);
        if o.passed() == known {
            unexpected.push(o.id);
        }
    }
    if !olive_or_failure_is_only_the_infeasible_fit() {
        unexpected.push("AC5 sub-checks");
    }
    if unexpected.is_empty() {
        println!("known unattainable: {}", KNOWN_UNATTAINABLE.join(", "));
    } else {
        eprintln!("unexpected acceptance outcome: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}

/// The only AC5 shortfall is the infeasible Olive OR fit.
fn olive_or_failure_is_only_the_infeasible_fit() -> bool {
    let or = PairWeights::or(0.5, 0.1, 0.8).unwrap();
    let and = PairWeights::and(0.56, 0.63, 0.65).unwrap();
    let classified = classify_deviation(&or).kind == DeviationKind::DoubleOverextended
        && classify_deviation(&and).kind == DeviationKind::DoubleOverextended;
    let and_fits = fit_pair(&and, FitStrategy::MaxSector1).is_ok_and(|f| f.residual <= tol::ALGEBRAIC_FIT);
    let or_infeasible = [FitStrategy::MaxSector1, FitStrategy::MinInterference, FitStrategy::FixM2(0.0)]
        .into_iter()
        .all(|s| matches!(fit_pair(&or, s), Err(fockfit_core::Error::Infeasible { hi, .. }) if (hi - 0.55).abs() < 1e-12));
    classified && and_fits && or_infeasible
}
