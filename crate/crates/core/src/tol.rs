//! Numerical tolerances shared across the crate.

/// `|<v|v> - 1|` allowed for a unit vector.
pub const UNIT_NORM: f64 = 1e-12;
/// Entrywise slack for `M² = M` and `M = M†`.
pub const PROJECTOR: f64 = 1e-12;
/// Imaginary residue tolerated in a Born weight before it is rejected.
pub const BORN_IMAG: f64 = 1e-12;
/// Forward-model residual accepted for closed-form fits.
pub const ALGEBRAIC_FIT: f64 = 1e-9;
/// Born-rule readback of a constructed realization.
pub const BORN_READBACK: f64 = 1e-10;
/// Pairwise overlap tolerated between "orthogonal" concept vectors.
pub const ORTHOGONALITY: f64 = 1e-10;
/// Comparison against values published with two-digit rounding.
pub const PUBLISHED: f64 = 0.05;
/// Default tolerance of the five classicality conditions.
pub const CLASSICALITY: f64 = 1e-6;
/// Tolerance of the classicality precondition for an exact sector-2 construction.
pub const CLASSICALITY_STRICT: f64 = 1e-9;
/// `m² + n² = 1` for parameter sets supplied from outside. Two-digit rounding
/// of `m` and `n` alone moves `m² + n²` by up to about 0.0135.
pub const EXTERNAL_NORMALIZATION: f64 = 2e-2;
/// `m² + n² = 1` for parameters produced by this crate.
pub const INTERNAL_NORMALIZATION: f64 = 1e-9;
