//! Conjunctions of two concepts and their negations.
//!
//! An item is measured against `A`, `B`, `A'`, `B'` and the four conjunctions
//! `A∧B`, `A∧B'`, `A'∧B`, `A'∧B'`. The eight weights admit a classical joint
//! distribution exactly when the five classicality conditions hold, and in
//! that case a (generally entangled) sector-2 state reproduces them. The
//! general model mixes sector 2 and sector 1 per quadrant:
//!
//! ```text
//! μ(X∧Y) = m²·α + n²·((μX + μY)/2 + β·cos φ)
//! ```

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combination::{check_weight, interference_magnitude};
use crate::error::{Error, Result};
use crate::hilbert::{ComplexVector, Projector, UnitVector, C64};
use crate::optimize::NelderMead;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    AB,
    ANotB,
    NotAB,
    NotANotB,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::AB, Quadrant::ANotB, Quadrant::NotAB, Quadrant::NotANotB];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrant::AB => "AB",
            Quadrant::ANotB => "AB'",
            Quadrant::NotAB => "A'B",
            Quadrant::NotANotB => "A'B'",
        }
    }
}

/// Eight membership weights of one item, plus labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NegationRecord {
    pub item: String,
    pub concept_a: String,
    pub concept_b: String,
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_a_neg: f64,
    pub mu_b_neg: f64,
    pub mu_ab: f64,
    pub mu_ab_neg: f64,
    pub mu_aneg_b: f64,
    pub mu_aneg_bneg: f64,
}

impl NegationRecord {
    /// Weights in the order `μA, μB, μA', μB', μ(AB), μ(AB'), μ(A'B), μ(A'B')`.
    pub fn from_weights(w: [f64; 8]) -> Result<Self> {
        let record = Self {
            mu_a: w[0],
            mu_b: w[1],
            mu_a_neg: w[2],
            mu_b_neg: w[3],
            mu_ab: w[4],
            mu_ab_neg: w[5],
            mu_aneg_b: w[6],
            mu_aneg_bneg: w[7],
            ..Self::default()
        };
        record.validate()?;
        Ok(record)
    }

    pub fn with_labels(mut self, item: &str, concept_a: &str, concept_b: &str) -> Self {
        self.item = item.into();
        self.concept_a = concept_a.into();
        self.concept_b = concept_b.into();
        self
    }

    pub fn weights(&self) -> [f64; 8] {
        [
            self.mu_a,
            self.mu_b,
            self.mu_a_neg,
            self.mu_b_neg,
            self.mu_ab,
            self.mu_ab_neg,
            self.mu_aneg_b,
            self.mu_aneg_bneg,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        const NAMES: [&str; 8] =
            ["mu_a", "mu_b", "mu_a_neg", "mu_b_neg", "mu_ab", "mu_ab_neg", "mu_aneg_b", "mu_aneg_bneg"];
        for (name, w) in NAMES.iter().zip(self.weights()) {
            check_weight(name, w)?;
        }
        Ok(())
    }

    /// `(μX, μY)` entering the sector-1 term of a quadrant.
    pub fn constituents(&self, q: Quadrant) -> (f64, f64) {
        match q {
            Quadrant::AB => (self.mu_a, self.mu_b),
            Quadrant::ANotB => (self.mu_a, self.mu_b_neg),
            Quadrant::NotAB => (self.mu_a_neg, self.mu_b),
            Quadrant::NotANotB => (self.mu_a_neg, self.mu_b_neg),
        }
    }

    pub fn conjunction(&self, q: Quadrant) -> f64 {
        self.quadrants()[q.index()]
    }

    pub fn quadrants(&self) -> [f64; 4] {
        [self.mu_ab, self.mu_ab_neg, self.mu_aneg_b, self.mu_aneg_bneg]
    }

    /// Same item with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            item: self.item.clone(),
            concept_a: self.concept_b.clone(),
            concept_b: self.concept_a.clone(),
            mu_a: self.mu_b,
            mu_b: self.mu_a,
            mu_a_neg: self.mu_b_neg,
            mu_b_neg: self.mu_a_neg,
            mu_ab: self.mu_ab,
            mu_ab_neg: self.mu_aneg_b,
            mu_aneg_b: self.mu_ab_neg,
            mu_aneg_bneg: self.mu_aneg_bneg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalityReport {
    /// Marginal conditions for `A`, `B`, `A'`, `B'`, then normalization.
    pub residuals: [f64; 5],
    pub classical: bool,
    pub tolerance: f64,
}

/// Five classicality conditions at the default tolerance (1e-6).
pub fn classicality_conditions(record: &NegationRecord) -> ClassicalityReport {
    classicality_conditions_with(record, tol::CLASSICALITY)
}

pub fn classicality_conditions_with(record: &NegationRecord, tolerance: f64) -> ClassicalityReport {
    let r = record;
    let residuals = [
        r.mu_a - r.mu_ab - r.mu_ab_neg,
        r.mu_b - r.mu_ab - r.mu_aneg_b,
        r.mu_a_neg - r.mu_aneg_bneg - r.mu_aneg_b,
        r.mu_b_neg - r.mu_aneg_bneg - r.mu_ab_neg,
        r.mu_ab + r.mu_ab_neg + r.mu_aneg_b + r.mu_aneg_bneg - 1.0,
    ];
    let classical = residuals.iter().all(|x| x.abs() <= tolerance);
    ClassicalityReport { residuals, classical, tolerance }
}

/// Whether a joint distribution over the atoms `A∩B, A∩B', A'∩B, A'∩B'`
/// reproduces all eight weights to 1e-9.
///
/// The conjunction weights are the only candidate atom probabilities, so the
/// check is: nonnegative, summing to one, and every single-concept event
/// (a union of two atoms) carrying its measured weight.
pub fn kolmogorov_oracle(record: &NegationRecord) -> bool {
    const EPS: f64 = tol::CLASSICALITY_STRICT;
    // atom k = (in A, in B)
    const ATOMS: [(bool, bool); 4] = [(true, true), (true, false), (false, true), (false, false)];
    let p = record.quadrants();
    if p.iter().any(|&x| x < -EPS) || (p.iter().sum::<f64>() - 1.0).abs() > EPS {
        return false;
    }
    type Membership = fn((bool, bool)) -> bool;
    let events: [(f64, Membership); 4] = [
        (record.mu_a, |(a, _)| a),
        (record.mu_b, |(_, b)| b),
        (record.mu_a_neg, |(a, _)| !a),
        (record.mu_b_neg, |(_, b)| !b),
    ];
    events.iter().all(|&(measured, member)| {
        let mass: f64 = ATOMS.iter().zip(&p).filter(|(atom, _)| member(**atom)).map(|(_, x)| x).sum();
        (mass - measured).abs() <= EPS
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector1NegationWeights {
    /// `μA, μB, μA', μB'`.
    pub marginals: [f64; 4],
    /// Born weights of `(|X> + |Y>)/√2` per quadrant.
    pub superpositions: [f64; 4],
}

/// Sector-1 Born weights for mutually orthogonal `|A>, |B>, |A'>, |B'>`.
pub fn sector1_negation_weights(vectors: &[UnitVector; 4], proj: &Projector) -> Result<Sector1NegationWeights> {
    for i in 0..4 {
        for j in i + 1..4 {
            let overlap = vectors[i].inner(&vectors[j])?.norm();
            if overlap > tol::ORTHOGONALITY {
                return Err(Error::NotOrthogonal { overlap });
            }
        }
    }
    let mut marginals = [0.0; 4];
    for (w, v) in marginals.iter_mut().zip(vectors) {
        *w = proj.weight(v)?;
    }
    let [a, b, a_neg, b_neg] = vectors;
    let s = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    let pairs = [(a, b), (a, b_neg), (a_neg, b), (a_neg, b_neg)];
    let mut superpositions = [0.0; 4];
    for (w, (x, y)) in superpositions.iter_mut().zip(pairs) {
        let state = UnitVector::new(x.add(y)?.scale(s))?;
        *w = proj.weight(&state)?;
    }
    Ok(Sector1NegationWeights { marginals, superpositions })
}

/// Sector-2 state `|C> ∈ C²⊗C²` and the decision projector `M` on `C²`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntangledRealization {
    pub state_c: UnitVector,
    pub proj: Projector,
}

impl EntangledRealization {
    /// Born weights in record order: `μA, μB, μA', μB'` via `M⊗1`, `1⊗M`,
    /// `(1-M)⊗1`, `1⊗(1-M)`, then the four quadrant projectors.
    pub fn readback(&self) -> Result<[f64; 8]> {
        let m = &self.proj;
        let not_m = m.complement();
        let id = Projector::identity(m.dim())?;
        let projectors = [
            m.tensor(&id),
            id.tensor(m),
            not_m.tensor(&id),
            id.tensor(&not_m),
            m.tensor(m),
            m.tensor(&not_m),
            not_m.tensor(m),
            not_m.tensor(&not_m),
        ];
        let mut out = [0.0; 8];
        for (w, p) in out.iter_mut().zip(&projectors) {
            *w = p.weight(&self.state_c)?;
        }
        Ok(out)
    }

    /// Is `|C>` a product state? (Schmidt rank one of the 2×2 amplitude matrix.)
    pub fn is_product(&self) -> bool {
        let c = self.state_c.components();
        (c[0] * c[3] - c[1] * c[2]).norm() <= 1e-12
    }
}

/// Sector-2 realization of a classical record: `M = |e1><e1|` and
/// `|C> = Σ sqrt(μ(XY)) |x>⊗|y>` over `x, y ∈ {e1, e2}`.
pub fn construct_entangled(record: &NegationRecord) -> Result<EntangledRealization> {
    record.validate()?;
    let report = classicality_conditions_with(record, tol::CLASSICALITY_STRICT);
    if !report.classical {
        return Err(Error::NonClassical(report));
    }
    let amplitudes: Vec<f64> = record.quadrants().iter().map(|&p| libm::sqrt(p)).collect();
    // the record sums to one only within the classicality tolerance
    let state_c = ComplexVector::from_real(&amplitudes)?.normalized()?;
    let proj = Projector::coordinate(&[true, false])?;
    Ok(EntangledRealization { state_c, proj })
}

/// `[μA' - (1 - μA), μB' - (1 - μB), μA - μ(AB) - μ(AB'), μB - μ(AB) - μ(A'B)]`
/// from the realization's own Born weights.
pub fn sector2_marginal_check(realization: &EntangledRealization) -> Result<[f64; 4]> {
    let [a, b, a_neg, b_neg, ab, ab_neg, aneg_b, _] = realization.readback()?;
    Ok([a_neg - (1.0 - a), b_neg - (1.0 - b), a - ab - ab_neg, b - ab - aneg_b])
}

/// Parameters of one quadrant; `lambda_deg`, `nu_deg` are inert phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrantParams {
    pub m: f64,
    pub n: f64,
    pub phi_deg: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda_deg: f64,
    pub nu_deg: f64,
}

impl QuadrantParams {
    pub fn new(m: f64, n: f64, phi_deg: f64, alpha: f64, beta: f64) -> Self {
        Self { m, n, phi_deg, alpha, beta, lambda_deg: 0.0, nu_deg: 0.0 }
    }

    pub fn m_sq(&self) -> f64 {
        self.m * self.m
    }

    pub fn n_sq(&self) -> f64 {
        self.n * self.n
    }

    /// Checks ranges, with `normalization` slack on `m² + n² = 1`.
    pub fn validate(&self, normalization: f64) -> Result<()> {
        if self.m < 0.0 || self.n < 0.0 {
            return Err(Error::OutOfRange { name: "m, n", value: self.m.min(self.n) });
        }
        let total = self.m_sq() + self.n_sq();
        if (total - 1.0).abs() > normalization {
            return Err(Error::OutOfRange { name: "m^2 + n^2", value: total });
        }
        check_weight("alpha", self.alpha)?;
        if self.beta.abs() > 1.0 {
            return Err(Error::OutOfRange { name: "beta", value: self.beta });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegationFockParams {
    /// Indexed by [`Quadrant::index`].
    pub quadrants: [QuadrantParams; 4],
}

impl NegationFockParams {
    pub fn get(&self, q: Quadrant) -> &QuadrantParams {
        &self.quadrants[q.index()]
    }

    pub fn validate(&self, normalization: f64) -> Result<()> {
        self.quadrants.iter().try_for_each(|q| q.validate(normalization))
    }

    /// Forward model for all four quadrants of `record`.
    pub fn predict(&self, record: &NegationRecord) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for q in Quadrant::ALL {
            let (x, y) = record.constituents(q);
            out[q.index()] = negation_conjunction_weight(x, y, self.get(q))?;
        }
        Ok(out)
    }
}

/// `m²α + n²((μX + μY)/2 + β cos φ)`.
///
/// Accepts externally supplied parameters, so `m² + n² = 1` is only checked to 2e-2.
pub fn negation_conjunction_weight(mu_x: f64, mu_y: f64, params: &QuadrantParams) -> Result<f64> {
    check_weight("mu_x", mu_x)?;
    check_weight("mu_y", mu_y)?;
    params.validate(tol::EXTERNAL_NORMALIZATION)?;
    Ok(quadrant_model(mu_x, mu_y, params))
}

fn quadrant_model(mu_x: f64, mu_y: f64, p: &QuadrantParams) -> f64 {
    let sector1 = (mu_x + mu_y) / 2.0 + p.beta * libm::cos(p.phi_deg.to_radians());
    p.m_sq() * p.alpha + p.n_sq() * sector1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegationFitConfig {
    pub seed: u64,
    /// Local searches per quadrant; the first always starts from the pure
    /// sector-1 average (`m = 0`, `β = 0`).
    pub starts: usize,
}

impl Default for NegationFitConfig {
    fn default() -> Self {
        Self { seed: 0, starts: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegationFit {
    pub params: NegationFockParams,
    /// `|model - measured|` per quadrant.
    pub residuals: [f64; 4],
}

impl NegationFit {
    pub fn total_squared_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r * r).sum()
    }
}

/// Per-quadrant least-squares fit of the four conjunction weights.
///
/// Constraints are built into the search coordinates
/// `(u, v, w, z) ↦ (n² = sin²u, α = sin²v, β = b·sin w, φ = 180°·sin²z)` with `b` the
/// interference bound of the quadrant's constituent weights, so the simplex
/// search runs unconstrained. Among starts reaching the lowest residual, the
/// one with the largest `n²` wins, then the earliest.
pub fn fit_negation_model(record: &NegationRecord, config: &NegationFitConfig) -> Result<NegationFit> {
    record.validate()?;
    let nm = NelderMead::default();
    let mut quadrants = [QuadrantParams::new(0.0, 1.0, 90.0, 0.0, 0.0); 4];
    let mut residuals = [0.0; 4];

    for q in Quadrant::ALL {
        let (x, y) = record.constituents(q);
        let target = record.conjunction(q);
        let bound = interference_magnitude(x, y)?;
        let decode = |c: &[f64]| {
            let (s_u, c_u) = (libm::sin(c[0]), libm::cos(c[0]));
            let s_v = libm::sin(c[1]);
            let s_z = libm::sin(c[3]);
            QuadrantParams::new(c_u.abs(), s_u.abs(), 180.0 * s_z * s_z, s_v * s_v, bound * libm::sin(c[2]))
        };
        let objective = |c: &[f64]| {
            let r = quadrant_model(x, y, &decode(c)) - target;
            r * r
        };

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (q.index() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let canonical =
            [core::f64::consts::FRAC_PI_2, libm::asin(libm::sqrt(target)), 0.0, core::f64::consts::FRAC_PI_4];
        let mut best: Option<(f64, QuadrantParams)> = None;
        for k in 0..config.starts.max(1) {
            let start =
                if k == 0 { canonical } else { core::array::from_fn(|_| unit_f64(&mut rng) * core::f64::consts::PI) };
            let found = nm.minimize(objective, &start);
            let params = decode(&found.x);
            let better = match &best {
                None => true,
                Some((f, p)) => found.f < f - 1e-20 || (found.f <= f + 1e-20 && params.n_sq() > p.n_sq()),
            };
            if better {
                best = Some((found.f, params));
            }
        }
        let (_, params) = best.expect("at least one start");
        residuals[q.index()] = (quadrant_model(x, y, &params) - target).abs();
        quadrants[q.index()] = params;
    }
    Ok(NegationFit { params: NegationFockParams { quadrants }, residuals })
}

pub(crate) fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combination::{conjunction_weight, FockParams};
    use crate::oracles::{grid_validate_fit, record_from_joint, sample_classical_records, OracleConfig};
    use proptest::prelude::*;

    fn goldfish() -> NegationRecord {
        NegationRecord::from_weights([0.93, 0.17, 0.12, 0.81, 0.43, 0.91, 0.18, 0.43]).unwrap().with_labels(
            "Goldfish",
            "Pets",
            "Farmyard Animals",
        )
    }

    fn goldfish_published() -> NegationFockParams {
        NegationFockParams {
            quadrants: [
                QuadrantParams::new(0.45, 0.89, 78.9, 0.35, -0.24),
                QuadrantParams::new(0.45, 0.9, 43.15, 0.9, 0.10),
                QuadrantParams::new(0.48, 0.88, 54.74, 0.22, 0.12),
                QuadrantParams::new(0.45, 0.89, 77.94, 0.17, 0.30),
            ],
        }
    }

    #[test]
    fn classicality_goldfish() {
        let report = classicality_conditions(&goldfish());
        assert!((report.residuals[0] - (-0.41)).abs() < 1e-12);
        assert!((report.residuals[4] - 0.95).abs() < 1e-12);
        assert!(!report.classical);
        assert_eq!(report.tolerance, 1e-6);
    }

    #[test]
    fn classicality_flat_quarter_record() {
        let report = classicality_conditions(&NegationRecord::from_weights([0.25; 8]).unwrap());
        assert!((report.residuals[0] + 0.25).abs() < 1e-15);
        assert_eq!(report.residuals[4], 0.0);
        assert!(!report.classical);
    }

    #[test]
    fn classicality_of_joint_distribution() {
        let rec = record_from_joint([0.4, 0.2, 0.3, 0.1]);
        let report = classicality_conditions(&rec);
        assert!(report.residuals.iter().all(|r| r.abs() < 1e-15), "{:?}", report.residuals);
        assert!(report.classical);
    }

    #[test]
    fn oracle_examples() {
        assert!(!kolmogorov_oracle(&goldfish()));
        let product = NegationRecord::from_weights([0.5, 0.5, 0.5, 0.5, 0.25, 0.25, 0.25, 0.25]).unwrap();
        assert!(kolmogorov_oracle(&product));
        assert!(kolmogorov_oracle(&record_from_joint([0.4, 0.2, 0.3, 0.1])));
    }

    #[test]
    fn sector1_standard_basis() {
        let basis: [UnitVector; 4] =
            core::array::from_fn(|i| UnitVector::new(ComplexVector::basis(4, i).unwrap()).unwrap());
        let proj = Projector::coordinate(&[true, true, false, false]).unwrap();
        let w = sector1_negation_weights(&basis, &proj).unwrap();
        assert_eq!(w.marginals, [1.0, 1.0, 0.0, 0.0]);
        // (A, B) both in range, (A, B') half in range, (A', B') outside
        assert!((w.superpositions[0] - 1.0).abs() < 1e-15);
        assert!((w.superpositions[1] - 0.5).abs() < 1e-15);
        assert!((w.superpositions[2] - 0.5).abs() < 1e-15);
        assert_eq!(w.superpositions[3], 0.0);
    }

    #[test]
    fn sector1_superposition_of_e1_e3() {
        let basis: [UnitVector; 4] =
            core::array::from_fn(|i| UnitVector::new(ComplexVector::basis(4, i).unwrap()).unwrap());
        // A = e1, B = e3: the A∧B superposition is (e1 + e3)/√2
        let frame = [basis[0].clone(), basis[2].clone(), basis[1].clone(), basis[3].clone()];
        let proj = Projector::coordinate(&[true, true, false, false]).unwrap();
        let w = sector1_negation_weights(&frame, &proj).unwrap();
        assert!((w.superpositions[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sector1_rejects_overlapping_vectors() {
        let e = |i| UnitVector::new(ComplexVector::basis(4, i).unwrap()).unwrap();
        let tilted = ComplexVector::from_real(&[0.6, 0.8, 0.0, 0.0]).unwrap().normalized().unwrap();
        let frame = [e(0), tilted, e(2), e(3)];
        let proj = Projector::identity(4).unwrap();
        assert!(matches!(sector1_negation_weights(&frame, &proj), Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn sector1_random_frame_matches_dense_evaluation() {
        use nalgebra::{Complex, DMatrix, DVector};
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut draw = || Complex::new(unit_f64(&mut rng) - 0.5, unit_f64(&mut rng) - 0.5);
        let dim = 6;
        let raw = DMatrix::from_fn(dim, dim, |_, _| draw());
        let q = raw.qr().q();
        let frame: [UnitVector; 4] = core::array::from_fn(|k| {
            let v: Vec<C64> = (0..dim).map(|i| C64::new(q[(i, k)].re, q[(i, k)].im)).collect();
            ComplexVector::new(v).unwrap().normalized().unwrap()
        });
        let span: Vec<ComplexVector> = (0..2)
            .map(|_| {
                ComplexVector::new(
                    (0..dim)
                        .map(|_| {
                            let z = draw();
                            C64::new(z.re, z.im)
                        })
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let proj = Projector::onto_span(dim, &span).unwrap();
        let w = sector1_negation_weights(&frame, &proj).unwrap();

        let m = DMatrix::from_fn(dim, dim, |i, j| {
            let z = proj.get(i, j);
            Complex::new(z.re, z.im)
        });
        let dense = |v: &DVector<Complex<f64>>| (v.adjoint() * &m * v)[(0, 0)].re;
        let col = |k: usize| q.column(k).into_owned();
        for k in 0..4 {
            assert!((w.marginals[k] - dense(&col(k))).abs() < 1e-12);
        }
        let s = core::f64::consts::FRAC_1_SQRT_2;
        for (k, (i, j)) in [(0, 1), (0, 3), (2, 1), (2, 3)].into_iter().enumerate() {
            let v = (col(i) + col(j)).scale(s);
            assert!((w.superpositions[k] - dense(&v)).abs() < 1e-12);
        }
    }

    #[test]
    fn entangled_examples() {
        let product = NegationRecord::from_weights([0.5, 0.5, 0.5, 0.5, 0.25, 0.25, 0.25, 0.25]).unwrap();
        let real = construct_entangled(&product).unwrap();
        for z in real.state_c.components() {
            assert!((z.re - 0.5).abs() < 1e-15 && z.im == 0.0);
        }
        assert!((real.readback().unwrap()[0] - 0.5).abs() < 1e-15);
        assert!(real.is_product());
        assert!((real.readback().unwrap()[2] - 0.5).abs() < 1e-15);

        let rec = record_from_joint([0.4, 0.2, 0.3, 0.1]);
        let real = construct_entangled(&rec).unwrap();
        let back = real.readback().unwrap();
        assert!((back[0] - 0.6).abs() < 1e-12);
        assert!((back[2] - 0.4).abs() < 1e-12);
        assert!(!real.is_product());
        assert!(sector2_marginal_check(&real).unwrap().iter().all(|r| r.abs() <= 1e-10));

        match construct_entangled(&goldfish()) {
            Err(Error::NonClassical(report)) => assert!(!report.classical),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn quadrant_weight_examples() {
        let published = goldfish_published();
        let v = negation_conjunction_weight(0.93, 0.17, published.get(Quadrant::AB)).unwrap();
        assert!((v - 0.43).abs() <= tol::PUBLISHED, "{v}");
        let predicted = published.predict(&goldfish()).unwrap();
        for (p, m) in predicted.iter().zip(goldfish().quadrants()) {
            assert!((p - m).abs() <= tol::PUBLISHED, "{p} vs {m}");
        }

        let pure2 = QuadrantParams::new(1.0, 0.0, 33.0, 0.3, 0.5);
        assert_eq!(negation_conjunction_weight(0.2, 0.9, &pure2).unwrap(), 0.3);

        let flat = QuadrantParams::new(0.0, 1.0, 12.0, 0.7, 0.0);
        assert!((negation_conjunction_weight(0.2, 0.9, &flat).unwrap() - 0.55).abs() < 1e-15);

        let bad_alpha = QuadrantParams::new(0.0, 1.0, 12.0, 1.5, 0.0);
        assert!(negation_conjunction_weight(0.2, 0.9, &bad_alpha).is_err());
        let bad_norm = QuadrantParams::new(0.5, 0.5, 12.0, 0.5, 0.0);
        assert!(negation_conjunction_weight(0.2, 0.9, &bad_norm).is_err());
    }

    #[test]
    fn quadrant_formula_reduces_to_conjunction() {
        for &(a, b, m_sq, theta) in &[(0.87, 0.81, 0.3, 23.9), (0.2, 0.4, 0.6, 120.0), (0.5, 0.5, 0.0, 0.0)] {
            let beta = interference_magnitude(a, b).unwrap();
            let q = QuadrantParams::new(libm::sqrt(m_sq), libm::sqrt(1.0 - m_sq), theta, a * b, beta);
            let lhs = negation_conjunction_weight(a, b, &q).unwrap();
            let rhs = conjunction_weight(a, b, &FockParams::new(m_sq, theta).unwrap()).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12);
        }
    }

    #[test]
    fn fit_goldfish() {
        let fit = fit_negation_model(&goldfish(), &NegationFitConfig::default()).unwrap();
        assert!(fit.residuals.iter().all(|&r| r <= 0.05), "{:?}", fit.residuals);
        assert!(fit.params.validate(tol::INTERNAL_NORMALIZATION).is_ok());
        assert!(grid_validate_fit(&goldfish(), &fit.params, &OracleConfig::default()));
    }

    #[test]
    fn fit_classical_product_record() {
        let rec = NegationRecord::from_weights([0.5, 0.5, 0.5, 0.5, 0.25, 0.25, 0.25, 0.25]).unwrap();
        let fit = fit_negation_model(&rec, &NegationFitConfig::default()).unwrap();
        assert!(fit.residuals.iter().all(|&r| r <= 1e-6), "{:?}", fit.residuals);
    }

    #[test]
    fn fit_pure_sector1_average() {
        let (a, b, an, bn) = (0.7, 0.2, 0.4, 0.6);
        let rec = NegationRecord::from_weights([
            a,
            b,
            an,
            bn,
            (a + b) / 2.0,
            (a + bn) / 2.0,
            (an + b) / 2.0,
            (an + bn) / 2.0,
        ])
        .unwrap();
        let fit = fit_negation_model(&rec, &NegationFitConfig::default()).unwrap();
        for q in &fit.params.quadrants {
            assert!(q.m < 1e-15, "{q:?}");
            assert_eq!(q.beta, 0.0);
        }
        assert!(fit.residuals.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn fit_is_deterministic() {
        let cfg = NegationFitConfig { seed: 99, starts: 10 };
        let one = fit_negation_model(&goldfish(), &cfg).unwrap();
        let two = fit_negation_model(&goldfish(), &cfg).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn theorem_on_sampled_classical_records() {
        for rec in sample_classical_records(200, 3) {
            assert!(kolmogorov_oracle(&rec));
            let real = construct_entangled(&rec).unwrap();
            let back = real.readback().unwrap();
            for (x, y) in back.iter().zip(rec.weights()) {
                assert!((x - y).abs() <= 1e-10);
            }
        }
    }

    proptest! {
        #[test]
        fn oracle_agrees_with_conditions(w in proptest::array::uniform8(0.0..=1.0f64)) {
            let rec = NegationRecord::from_weights(w).unwrap();
            let classical = classicality_conditions_with(&rec, 1e-9).classical;
            prop_assert_eq!(kolmogorov_oracle(&rec), classical);
            prop_assert_eq!(construct_entangled(&rec).is_ok(), classical);
        }

        #[test]
        fn residuals_invariant_under_relabeling(w in proptest::array::uniform8(0.0..=1.0f64)) {
            let rec = NegationRecord::from_weights(w).unwrap();
            let r = classicality_conditions(&rec).residuals;
            let s = classicality_conditions(&rec.swapped()).residuals;
            prop_assert_eq!(r[0], s[1]);
            prop_assert_eq!(r[1], s[0]);
            prop_assert_eq!(r[2], s[3]);
            prop_assert_eq!(r[3], s[2]);
            prop_assert!((r[4] - s[4]).abs() <= 1e-15);
        }
    }
}
