//! Two-sector Fock-space model of concept combination.
//!
//! Sector 1 is a single Hilbert space `H` where a combined concept is an
//! emergent superposition `(|A> + |B>)/sqrt(2)`; sector 2 is `H ⊗ H` where the
//! combination is evaluated by the probabilistic rules of logic. A membership
//! weight is the Born weight of a decision projector in a state spread across
//! both sectors with participations `n²` (sector 1) and `m²` (sector 2).
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! * [`hilbert`]: dense complex vectors, operators, tensor products, projectors.
//! * [`combination`]: conjunction/disjunction weights, angle inversion, fits.
//! * [`negation`]: classicality conditions, entangled sector-2 realizations and
//!   the four-quadrant conjunction-with-negation fit.
//! * `oracles` (feature `oracles`): brute-force cross-checks.

#![no_std]

extern crate alloc;

pub mod combination;
pub mod error;
pub mod hilbert;
pub mod negation;
mod optimize;
pub mod tol;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;

pub use combination::{
    classify_deviation, conjunction_weight, disjunction_weight, feasibility_interval, fit_pair, interference_magnitude,
    realize_sector1, solve_theta, Connective, DeviationClass, DeviationKind, FeasibilityInterval, FitStrategy,
    FockParams, PairFit, PairWeights, Sector1Realization,
};
pub use error::{Error, Result};
pub use hilbert::{born_weight, ComplexVector, LinearOperator, Projector, UnitVector, C64};
pub use negation::{
    classicality_conditions, construct_entangled, fit_negation_model, kolmogorov_oracle, negation_conjunction_weight,
    sector1_negation_weights, sector2_marginal_check, ClassicalityReport, EntangledRealization, NegationFit,
    NegationFitConfig, NegationFockParams, NegationRecord, Quadrant, QuadrantParams,
};
