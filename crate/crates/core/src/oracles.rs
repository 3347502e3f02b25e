//! Brute-force verifiers, kept independent of the closed-form paths they check.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::combination::interference_magnitude;
use crate::error::{Error, Result};
use crate::hilbert::C64;
use crate::negation::{unit_f64, NegationFockParams, NegationRecord, Quadrant};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Points on the angle axis; the other axes use `resolution / 10 + 1`.
    pub resolution: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl OracleConfig {
    pub fn new(resolution: usize, seed: u64, tolerance: f64) -> Result<Self> {
        if resolution < 100 {
            return Err(Error::OutOfRange { name: "resolution", value: resolution as f64 });
        }
        Ok(Self { resolution, seed, tolerance })
    }

    fn coarse(&self) -> usize {
        self.resolution / 10 + 1
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { resolution: 200, seed: 0, tolerance: 1e-6 }
    }
}

/// Bisection on `θ ∈ [0°, 180°]` for `forward(θ) = target`.
///
/// `forward` must be monotone on the interval (it is affine in `cos θ`).
pub fn bisect_theta(forward: impl Fn(f64) -> f64, target: f64) -> Result<f64> {
    let (f0, f180) = (forward(0.0), forward(180.0));
    let (lo, hi) = (f0.min(f180), f0.max(f180));
    if target < lo - 1e-12 || target > hi + 1e-12 {
        return Err(Error::Infeasible { target, lo, hi });
    }
    if (f0 - target).abs() <= 1e-15 {
        return Ok(0.0);
    }
    if (f180 - target).abs() <= 1e-15 {
        return Ok(180.0);
    }
    let decreasing = f0 > f180;
    let (mut a, mut b) = (0.0f64, 180.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let above = forward(mid) > target;
        if above == decreasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    let theta = 0.5 * (a + b);
    if (forward(theta) - target).abs() > 1e-8 {
        return Err(Error::Infeasible { target, lo, hi });
    }
    Ok(theta)
}

/// Record generated by the joint distribution `p` over the atoms
/// `A∩B, A∩B', A'∩B, A'∩B'`.
pub fn record_from_joint(p: [f64; 4]) -> NegationRecord {
    NegationRecord {
        mu_a: p[0] + p[1],
        mu_b: p[0] + p[2],
        mu_a_neg: p[2] + p[3],
        mu_b_neg: p[1] + p[3],
        mu_ab: p[0],
        mu_ab_neg: p[1],
        mu_aneg_b: p[2],
        mu_aneg_bneg: p[3],
        ..NegationRecord::default()
    }
}

/// `count` records drawn from uniformly random joint distributions (flat
/// Dirichlet via normalized exponentials).
pub fn sample_classical_records(count: usize, seed: u64) -> Vec<NegationRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let raw: [f64; 4] = core::array::from_fn(|_| -libm::log(1.0 - unit_f64(&mut rng)));
            let total: f64 = raw.iter().sum();
            record_from_joint(raw.map(|x| x / total))
        })
        .collect()
}

/// Born weight by explicit double sum, `Σ_ij conj(s_i) M_ij s_j`.
pub fn dense_born(state: &[C64], matrix: &[C64]) -> f64 {
    let n = state.len();
    let mut total = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            total += state[i].conj() * matrix[i * n + j] * state[j];
        }
    }
    total.re
}

/// `true` iff no point of a grid over `(m², α, β, φ)` beats `fitted`'s total
/// squared residual by more than `config.tolerance`.
///
/// Quadrants have disjoint parameters, so the grid minimum of the total is
/// the sum of per-quadrant grid minima.
pub fn grid_validate_fit(record: &NegationRecord, fitted: &NegationFockParams, config: &OracleConfig) -> bool {
    let coarse = config.coarse();
    let axis = |k: usize, len: usize| k as f64 / (len - 1) as f64;
    let cosines: Vec<f64> =
        (0..config.resolution).map(|k| libm::cos((180.0 * axis(k, config.resolution)).to_radians())).collect();

    let mut fitted_total = 0.0;
    let mut grid_total = 0.0;
    for q in Quadrant::ALL {
        let (x, y) = record.constituents(q);
        let target = record.conjunction(q);
        let avg = (x + y) / 2.0;
        let p = fitted.get(q);
        let model = p.m * p.m * p.alpha + p.n * p.n * (avg + p.beta * libm::cos(p.phi_deg.to_radians()));
        fitted_total += (model - target) * (model - target);

        let bound = interference_magnitude(x, y).unwrap_or(0.0);
        let mut best = f64::INFINITY;
        for i in 0..coarse {
            let m_sq = axis(i, coarse);
            for j in 0..coarse {
                let alpha = axis(j, coarse);
                for k in 0..coarse {
                    let beta = bound * (2.0 * axis(k, coarse) - 1.0);
                    for cos in &cosines {
                        let r = m_sq * alpha + (1.0 - m_sq) * (avg + beta * cos) - target;
                        best = best.min(r * r);
                    }
                }
            }
        }
        grid_total += best;
    }
    grid_total >= fitted_total - config.tolerance
}
