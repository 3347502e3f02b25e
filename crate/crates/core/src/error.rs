use core::fmt;

use crate::negation::ClassicalityReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operands of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// A vector or operator with no components.
    Empty,
    /// Operator data whose length is not a perfect square.
    NotSquare { len: usize },
    /// A vector required to be unit has `<v|v>` = `norm_sqr`.
    NotUnit { norm_sqr: f64 },
    /// An operator required to be an orthogonal projector deviates by `deviation`.
    NotProjector { deviation: f64 },
    /// Two vectors required to be orthogonal overlap by `overlap`.
    NotOrthogonal { overlap: f64 },
    /// A membership weight or coefficient outside its admissible range.
    OutOfRange { name: &'static str, value: f64 },
    /// No model parameters reproduce `target`; the attainable range is `[lo, hi]`.
    Infeasible { target: f64, lo: f64, hi: f64 },
    /// Requested interference exceeds the Cauchy–Schwarz bound.
    ExceedsBound { target: f64, bound: f64 },
    /// Record violates the classicality conditions.
    NonClassical(ClassicalityReport),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::Empty => f.write_str("empty vector or operator"),
            Error::NotSquare { len } => write!(f, "{len} entries do not form a square matrix"),
            Error::NotUnit { norm_sqr } => write!(f, "vector is not unit (<v|v> = {norm_sqr})"),
            Error::NotProjector { deviation } => {
                write!(f, "operator is not an orthogonal projector (deviation {deviation:e})")
            }
            Error::NotOrthogonal { overlap } => {
                write!(f, "vectors are not orthogonal (|<u|v>| = {overlap:e})")
            }
            Error::OutOfRange { name, value } => write!(f, "{name} = {value} is out of range"),
            Error::Infeasible { target, lo, hi } => {
                write!(f, "target {target} is outside the attainable range [{lo}, {hi}]")
            }
            Error::ExceedsBound { target, bound } => {
                write!(f, "interference {target} exceeds the Cauchy-Schwarz bound {bound}")
            }
            Error::NonClassical(report) => {
                write!(f, "record violates the classicality conditions (residuals {:?})", report.residuals)
            }
        }
    }
}

impl core::error::Error for Error {}
