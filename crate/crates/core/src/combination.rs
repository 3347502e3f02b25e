//! Conjunction and disjunction of two concepts in two-sector Fock space.
//!
//! A combined concept is the state
//! `m e^{iλ} |A>⊗|B> + n e^{iν} (|A> + |B>)/√2`, measured by `M ⊕ (M⊗M)` for
//! "and" and by `M ⊕ (1 - (1-M)⊗(1-M))` for "or". The Born weight is
//!
//! ```text
//! μ(A·B) = m²·s₂(μA, μB) + n²·((μA + μB)/2 + β·cos θ)
//! ```
//!
//! with `s₂ = μAμB` (and) or `μA + μB - μAμB` (or), and `β` the largest
//! interference compatible with orthogonal `|A>`, `|B>` (see
//! [`interference_magnitude`]). The phases λ, ν cancel out of every weight.

use alloc::vec;

use crate::error::{Error, Result};
use crate::hilbert::{ComplexVector, Projector, UnitVector, C64};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
}

impl Connective {
    /// Sector-2 weight: product rule for "and", inclusion–exclusion for "or".
    pub fn sector2_weight(self, mu_a: f64, mu_b: f64) -> f64 {
        match self {
            Connective::And => mu_a * mu_b,
            Connective::Or => mu_a + mu_b - mu_a * mu_b,
        }
    }
}

/// Measured membership weights of one item for `A`, `B` and `A·B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairWeights {
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_combined: f64,
    pub connective: Connective,
}

impl PairWeights {
    pub fn new(mu_a: f64, mu_b: f64, mu_combined: f64, connective: Connective) -> Result<Self> {
        check_weight("mu_a", mu_a)?;
        check_weight("mu_b", mu_b)?;
        check_weight("mu_combined", mu_combined)?;
        Ok(Self { mu_a, mu_b, mu_combined, connective })
    }

    pub fn and(mu_a: f64, mu_b: f64, mu_and: f64) -> Result<Self> {
        Self::new(mu_a, mu_b, mu_and, Connective::And)
    }

    pub fn or(mu_a: f64, mu_b: f64, mu_or: f64) -> Result<Self> {
        Self::new(mu_a, mu_b, mu_or, Connective::Or)
    }

    pub fn swapped(self) -> Self {
        Self { mu_a: self.mu_b, mu_b: self.mu_a, ..self }
    }
}

/// Sector participations and interference angle of a single combination.
///
/// `lambda_deg` and `nu_deg` are the phases of the two sector components; they
/// are carried for completeness and never influence a weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockParams {
    pub m_sq: f64,
    pub n_sq: f64,
    pub theta_deg: f64,
    pub lambda_deg: f64,
    pub nu_deg: f64,
}

impl FockParams {
    /// `n² = 1 - m²`, zero phases.
    pub fn new(m_sq: f64, theta_deg: f64) -> Result<Self> {
        let params = Self { m_sq, n_sq: 1.0 - m_sq, theta_deg, lambda_deg: 0.0, nu_deg: 0.0 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_weight("m_sq", self.m_sq)?;
        check_weight("n_sq", self.n_sq)?;
        if (self.m_sq + self.n_sq - 1.0).abs() > tol::INTERNAL_NORMALIZATION {
            return Err(Error::OutOfRange { name: "m_sq + n_sq", value: self.m_sq + self.n_sq });
        }
        if !(0.0..=180.0).contains(&self.theta_deg) {
            return Err(Error::OutOfRange { name: "theta_deg", value: self.theta_deg });
        }
        Ok(())
    }

    fn cos_theta(&self) -> f64 {
        libm::cos(self.theta_deg.to_radians())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeviationKind {
    ClassicalRange,
    Overextended,
    DoubleOverextended,
    Underextended,
    DoubleUnderextended,
}

impl DeviationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DeviationKind::ClassicalRange => "CLASSICAL_RANGE",
            DeviationKind::Overextended => "OVEREXTENDED",
            DeviationKind::DoubleOverextended => "DOUBLE_OVEREXTENDED",
            DeviationKind::Underextended => "UNDEREXTENDED",
            DeviationKind::DoubleUnderextended => "DOUBLE_UNDEREXTENDED",
        }
    }
}

/// Deviation label and the distance past the violated bound (`margin >= 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationClass {
    pub kind: DeviationKind,
    pub margin: f64,
}

/// Largest `|Re<A|M|B>|` for orthogonal unit `|A>`, `|B>` with the given Born
/// weights: `sqrt((1-μA)(1-μB))` when `μA + μB > 1`, otherwise `sqrt(μA μB)`.
pub fn interference_magnitude(mu_a: f64, mu_b: f64) -> Result<f64> {
    check_weight("mu_a", mu_a)?;
    check_weight("mu_b", mu_b)?;
    Ok(if mu_a + mu_b > 1.0 { libm::sqrt((1.0 - mu_a) * (1.0 - mu_b)) } else { libm::sqrt(mu_a * mu_b) })
}

/// Forward model for either connective.
pub fn combined_weight(connective: Connective, mu_a: f64, mu_b: f64, params: &FockParams) -> Result<f64> {
    let beta = interference_magnitude(mu_a, mu_b)?;
    params.validate()?;
    let sector1 = (mu_a + mu_b) / 2.0 + beta * params.cos_theta();
    Ok(params.m_sq * connective.sector2_weight(mu_a, mu_b) + params.n_sq * sector1)
}

pub fn conjunction_weight(mu_a: f64, mu_b: f64, params: &FockParams) -> Result<f64> {
    combined_weight(Connective::And, mu_a, mu_b, params)
}

pub fn disjunction_weight(mu_a: f64, mu_b: f64, params: &FockParams) -> Result<f64> {
    combined_weight(Connective::Or, mu_a, mu_b, params)
}

/// Interference angle in `[0°, 180°]` reproducing `mu_target` at fixed `m²`.
///
/// When `n²β = 0` the angle has no effect; 90° is returned if the remaining
/// sector terms already match the target.
pub fn solve_theta(mu_a: f64, mu_b: f64, mu_target: f64, m_sq: f64, connective: Connective) -> Result<f64> {
    check_weight("mu_target", mu_target)?;
    check_weight("m_sq", m_sq)?;
    let beta = interference_magnitude(mu_a, mu_b)?;
    let n_sq = 1.0 - m_sq;
    let fixed = m_sq * connective.sector2_weight(mu_a, mu_b) + n_sq * (mu_a + mu_b) / 2.0;
    let swing = n_sq * beta;
    let infeasible = Error::Infeasible { target: mu_target, lo: fixed - swing, hi: fixed + swing };

    if swing == 0.0 {
        return if (mu_target - fixed).abs() <= tol::ALGEBRAIC_FIT { Ok(90.0) } else { Err(infeasible) };
    }
    let cos = (mu_target - fixed) / swing;
    // admit rounding at the endpoints of the attainable range
    let slack = tol::ALGEBRAIC_FIT / swing;
    if cos.abs() > 1.0 + slack.min(1e-6) {
        return Err(infeasible);
    }
    Ok(libm::acos(cos.clamp(-1.0, 1.0)).to_degrees())
}

/// Closed range of combined weights reachable by some `m² ∈ [0,1]` and `θ`,
/// with the parameters attaining each endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_params: FockParams,
    pub hi_params: FockParams,
}

impl FeasibilityInterval {
    pub fn contains(&self, mu: f64) -> bool {
        mu >= self.lo - tol::ALGEBRAIC_FIT && mu <= self.hi + tol::ALGEBRAIC_FIT
    }
}

/// For fixed `m²` the reachable range is
/// `[m²s₂ + n²(avg - β), m²s₂ + n²(avg + β)]`; both ends are affine in `m²`, so
/// the union over `m²` is spanned by its values at `m² = 0` and `m² = 1`.
pub fn feasibility_interval(mu_a: f64, mu_b: f64, connective: Connective) -> Result<FeasibilityInterval> {
    let beta = interference_magnitude(mu_a, mu_b)?;
    let s2 = connective.sector2_weight(mu_a, mu_b);
    let avg = (mu_a + mu_b) / 2.0;
    let sector2_only = FockParams::new(1.0, 90.0)?;
    let (hi, hi_params) = if s2 >= avg + beta { (s2, sector2_only) } else { (avg + beta, FockParams::new(0.0, 0.0)?) };
    let (lo, lo_params) =
        if s2 <= avg - beta { (s2, sector2_only) } else { (avg - beta, FockParams::new(0.0, 180.0)?) };
    Ok(FeasibilityInterval { lo, hi, lo_params, hi_params })
}

/// How to pick one parameter set out of the family reproducing a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitStrategy {
    /// Fix `m²` and solve for θ.
    FixM2(f64),
    /// Largest sector-1 participation `n²` that admits a solution.
    MaxSector1,
    /// Smallest `|cos θ|` over all admissible `m²`.
    MinInterference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairFit {
    pub params: FockParams,
    /// `|forward(params) - mu_combined|`.
    pub residual: f64,
}

/// Fits [`FockParams`] to a record. Infeasible records are reported with the
/// attainable interval over all `m²`.
pub fn fit_pair(record: &PairWeights, strategy: FitStrategy) -> Result<PairFit> {
    let PairWeights { mu_a, mu_b, mu_combined: target, connective } = *record;
    let interval = feasibility_interval(mu_a, mu_b, connective)?;
    let infeasible = Error::Infeasible { target, lo: interval.lo, hi: interval.hi };
    let beta = interference_magnitude(mu_a, mu_b)?;
    let s2 = connective.sector2_weight(mu_a, mu_b);
    let avg = (mu_a + mu_b) / 2.0;

    // on the hull edge the angle is exactly 0° or 180°; re-solving it would
    // only add rounding where cos θ is flat
    let mut edge_theta = None;
    let m_sq = match strategy {
        FitStrategy::FixM2(m_sq) => {
            check_weight("m_sq", m_sq)?;
            m_sq
        }
        FitStrategy::MaxSector1 => {
            if (target - avg).abs() <= beta {
                0.0
            } else {
                // smallest m² that brings the target inside the attainable range
                let edge = if target > avg { avg + beta } else { avg - beta };
                let denom = s2 - edge;
                let m_sq = if denom == 0.0 { f64::INFINITY } else { (target - edge) / denom };
                if !(0.0..=1.0 + tol::ALGEBRAIC_FIT).contains(&m_sq) {
                    return Err(infeasible);
                }
                if m_sq < 1.0 {
                    edge_theta = Some(if target > avg { 0.0 } else { 180.0 });
                }
                m_sq.min(1.0)
            }
        }
        FitStrategy::MinInterference => {
            let (low, high) = if s2 <= avg { (s2, avg) } else { (avg, s2) };
            if target >= low && target <= high && s2 != avg {
                // cos θ = 0 reachable: sector terms alone hit the target
                ((avg - target) / (avg - s2)).clamp(0.0, 1.0)
            } else {
                // |cos θ| grows with m² outside [low, high]
                0.0
            }
        }
    };

    let theta = match edge_theta {
        Some(theta) => theta,
        None => solve_theta(mu_a, mu_b, target, m_sq, connective).map_err(|e| match e {
            Error::Infeasible { .. } => infeasible.clone(),
            other => other,
        })?,
    };
    let params = FockParams { m_sq, n_sq: 1.0 - m_sq, theta_deg: theta, lambda_deg: 0.0, nu_deg: 0.0 };
    let residual = (combined_weight(connective, mu_a, mu_b, &params)? - target).abs();
    if residual > tol::ALGEBRAIC_FIT {
        return Err(infeasible);
    }
    Ok(PairFit { params, residual })
}

/// Over-/underextension of a combined weight relative to its constituents.
///
/// "And" is overextended above `min(μA, μB)` and doubly so above `max`.
/// "Or" is underextended below `max(μA, μB)`, doubly so below `min`, and
/// doubly overextended above `μA + μB`. The strongest applicable label wins.
pub fn classify_deviation(record: &PairWeights) -> DeviationClass {
    let PairWeights { mu_a, mu_b, mu_combined: mu, connective } = *record;
    let (low, high) = (mu_a.min(mu_b), mu_a.max(mu_b));
    let (kind, margin) = match connective {
        Connective::And if mu > high => (DeviationKind::DoubleOverextended, mu - high),
        Connective::And if mu > low => (DeviationKind::Overextended, mu - low),
        Connective::Or if mu < low => (DeviationKind::DoubleUnderextended, low - mu),
        Connective::Or if mu < high => (DeviationKind::Underextended, high - mu),
        Connective::Or if mu > mu_a + mu_b => (DeviationKind::DoubleOverextended, mu - (mu_a + mu_b)),
        _ => (DeviationKind::ClassicalRange, 0.0),
    };
    DeviationClass { kind, margin }
}

/// Explicit sector-1 vectors and decision projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector1Realization {
    pub vec_a: UnitVector,
    pub vec_b: UnitVector,
    pub proj: Projector,
    pub dimension: usize,
}

impl Sector1Realization {
    /// `(|A> + |B>)/√2`, a unit vector because `<A|B> = 0`.
    pub fn superposition(&self) -> Result<UnitVector> {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        UnitVector::new(self.vec_a.add(&self.vec_b)?.scale(C64::new(s, 0.0)))
    }

    pub fn interference(&self) -> Result<f64> {
        Ok(self.proj.sandwich(&self.vec_a, &self.vec_b)?.re)
    }
}

/// Builds orthogonal unit vectors `|A>`, `|B>` in `C³` and a projector `M` with
/// `<A|M|A> = μA`, `<B|M|B> = μB` and `Re<A|M|B> = target_interference`.
///
/// Each vector splits into a part in the range of `M` and a part in its
/// kernel. For `μA + μB > 1` the kernel is one-dimensional and the range
/// parts are rotated against each other; otherwise the roles swap.
pub fn realize_sector1(mu_a: f64, mu_b: f64, target_interference: f64) -> Result<Sector1Realization> {
    let bound = interference_magnitude(mu_a, mu_b)?;
    if target_interference.abs() > bound + 1e-12 {
        return Err(Error::ExceedsBound { target: target_interference, bound });
    }
    let t = target_interference.clamp(-bound, bound);
    let in_a = libm::sqrt(mu_a);
    let in_b = libm::sqrt(mu_b);
    let out_a = libm::sqrt(1.0 - mu_a);
    let out_b = libm::sqrt(1.0 - mu_b);
    let phase = |cos: f64| {
        let sin = libm::sqrt((1.0 - cos * cos).max(0.0));
        C64::new(cos, sin)
    };
    let zero = C64::new(0.0, 0.0);
    let real = |x: f64| C64::new(x, 0.0);

    let (vec_a, vec_b, mask) = if mu_a + mu_b > 1.0 {
        // M = span{e1, e2}; kernel parts e3 and e^{iχ} e3 with Re<A|M|B> = -bound·cos χ
        let chi = if bound > 0.0 { phase(-t / bound) } else { C64::new(0.0, 1.0) };
        let z = if in_a * in_b > 0.0 { -chi * (bound / (in_a * in_b)) } else { zero };
        let z_perp = libm::sqrt((1.0 - z.norm_sqr()).max(0.0));
        let a = vec![real(in_a), zero, real(out_a)];
        let b = vec![z * in_b, real(z_perp * in_b), chi * out_b];
        (a, b, [true, true, false])
    } else {
        // M = span{e1}; range parts e1 and e^{iχ} e1 with Re<A|M|B> = bound·cos χ
        let chi = if bound > 0.0 { phase(t / bound) } else { C64::new(0.0, 1.0) };
        let y = if out_a * out_b > 0.0 { -chi * (bound / (out_a * out_b)) } else { zero };
        let y_perp = libm::sqrt((1.0 - y.norm_sqr()).max(0.0));
        let a = vec![real(in_a), real(out_a), zero];
        let b = vec![chi * in_b, y * out_b, real(y_perp * out_b)];
        (a, b, [true, false, false])
    };
    let realization = Sector1Realization {
        vec_a: ComplexVector::new(vec_a)?.normalized()?,
        vec_b: ComplexVector::new(vec_b)?.normalized()?,
        proj: Projector::coordinate(&mask)?,
        dimension: 3,
    };
    Ok(realization)
}

pub(crate) fn check_weight(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(())
}
