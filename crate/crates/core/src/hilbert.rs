//! Finite-dimensional complex linear algebra.
//!
//! Everything is dense; model spaces have dimension at most a few dozen.
//! Tensor products use the Kronecker convention with the first factor's index
//! varying slowest: `(u ⊗ v)[i * dim(v) + j] = u[i] * v[j]`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    components: Vec<C64>,
}

impl ComplexVector {
    pub fn new(components: Vec<C64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { components })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `e_index` of `C^dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch { left: index + 1, right: dim });
        }
        let mut components = vec![ZERO; dim];
        components[index] = ONE;
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.components.iter().zip(&other.components).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scale(&self, factor: C64) -> ComplexVector {
        Self { components: self.components.iter().map(|z| z * factor).collect() }
    }

    pub fn add(&self, other: &ComplexVector) -> Result<ComplexVector> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() })
    }

    pub fn tensor(&self, other: &ComplexVector) -> ComplexVector {
        let mut components = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.components {
            components.extend(other.components.iter().map(|b| a * b));
        }
        Self { components }
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(&self) -> Result<UnitVector> {
        let norm = libm::sqrt(self.norm_sqr());
        if norm == 0.0 {
            return Err(Error::NotUnit { norm_sqr: 0.0 });
        }
        UnitVector::new(self.scale(C64::new(1.0 / norm, 0.0)))
    }
}

/// A vector with `|<v|v> - 1| <= 1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector(ComplexVector);

impl UnitVector {
    pub fn new(vector: ComplexVector) -> Result<Self> {
        let norm_sqr = vector.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::NotUnit { norm_sqr });
        }
        Ok(Self(vector))
    }

    pub fn into_inner(self) -> ComplexVector {
        self.0
    }

    pub fn tensor(&self, other: &UnitVector) -> Result<UnitVector> {
        Self::new(self.0.tensor(&other.0))
    }
}

impl Deref for UnitVector {
    type Target = ComplexVector;

    fn deref(&self) -> &ComplexVector {
        &self.0
    }
}

impl TryFrom<ComplexVector> for UnitVector {
    type Error = Error;

    fn try_from(vector: ComplexVector) -> Result<Self> {
        Self::new(vector)
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    dim: usize,
    data: Vec<C64>,
}

impl LinearOperator {
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        let dim = libm::sqrt(data.len() as f64) as usize;
        let dim = (dim.saturating_sub(1)..=dim + 1).find(|d| d * d == data.len());
        match dim {
            Some(dim) => Ok(Self { dim, data }),
            None => Err(Error::NotSquare { len: data.len() }),
        }
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSquare { len: rows.iter().map(|r| r.len()).sum() });
        }
        Self::from_row_major(rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        for i in 0..dim {
            op.data[i * dim + i] = ONE;
        }
        Ok(op)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        Ok(Self { dim, data: vec![ZERO; dim * dim] })
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let mut op = Self::zeros(entries.len())?;
        for (i, &x) in entries.iter().enumerate() {
            op.data[i * op.dim + i] = C64::new(x, 0.0);
        }
        Ok(op)
    }

    /// `|u><v|`.
    pub fn outer(u: &ComplexVector, v: &ComplexVector) -> Result<Self> {
        check_dims(u.dim(), v.dim())?;
        let dim = u.dim();
        let mut data = Vec::with_capacity(dim * dim);
        for a in u.components() {
            data.extend(v.components().iter().map(|b| a * b.conj()));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn as_row_major(&self) -> &[C64] {
        &self.data
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        check_dims(self.dim, v.dim())?;
        let components = self
            .data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v.components()).map(|(a, b)| a * b).sum())
            .collect();
        ComplexVector::new(components)
    }

    pub fn matmul(&self, other: &LinearOperator) -> Result<LinearOperator> {
        check_dims(self.dim, other.dim)?;
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: C64) -> LinearOperator {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn adjoint(&self) -> LinearOperator {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data }
    }

    /// Kronecker product, first factor slowest.
    pub fn tensor(&self, other: &LinearOperator) -> LinearOperator {
        let (p, q) = (self.dim, other.dim);
        let n = p * q;
        let mut data = vec![ZERO; n * n];
        for i in 0..p {
            for j in 0..p {
                let a = self.data[i * p + j];
                for k in 0..q {
                    for l in 0..q {
                        data[(i * q + k) * n + (j * q + l)] = a * other.data[k * q + l];
                    }
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `<u|self|v>`.
    pub fn sandwich(&self, u: &ComplexVector, v: &ComplexVector) -> Result<C64> {
        u.inner(&self.apply(v)?)
    }

    /// Largest entrywise deviation from `M = M†` and `M² = M`.
    pub fn projector_deviation(&self) -> f64 {
        let hermitian = max_abs_diff(&self.data, &self.adjoint().data);
        let square = self.matmul(self).expect("same dimension");
        hermitian.max(max_abs_diff(&self.data, &square.data))
    }

    fn zip_with(&self, other: &LinearOperator, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect() })
    }
}

/// Orthogonal projector, validated at construction to 1e-12 entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector(LinearOperator);

impl Projector {
    pub fn new(op: LinearOperator) -> Result<Self> {
        let deviation = op.projector_deviation();
        if deviation > tol::PROJECTOR {
            return Err(Error::NotProjector { deviation });
        }
        Ok(Self(op))
    }

    /// Projector onto the span of `vectors` (Gram–Schmidt; near-dependent
    /// vectors are dropped).
    pub fn onto_span(dim: usize, vectors: &[ComplexVector]) -> Result<Self> {
        let mut basis: Vec<ComplexVector> = Vec::new();
        for v in vectors {
            check_dims(dim, v.dim())?;
            let mut w = v.clone();
            // two passes keep the basis orthogonal to working precision
            for _ in 0..2 {
                for e in &basis {
                    let c = e.inner(&w)?;
                    w = w.add(&e.scale(-c))?;
                }
            }
            if w.norm_sqr() > 1e-20 {
                basis.push(w.normalized()?.into_inner());
            }
        }
        let mut op = LinearOperator::zeros(dim)?;
        for e in &basis {
            op = op.add(&LinearOperator::outer(e, e)?)?;
        }
        Self::new(op)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(LinearOperator::identity(dim)?))
    }

    /// Projector onto the coordinate axes flagged in `mask`.
    pub fn coordinate(mask: &[bool]) -> Result<Self> {
        let entries: Vec<f64> = mask.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        Ok(Self(LinearOperator::diagonal(&entries)?))
    }

    /// `1 - M`.
    pub fn complement(&self) -> Projector {
        let id = LinearOperator::identity(self.0.dim).expect("nonzero dimension");
        Self(id.sub(&self.0).expect("same dimension"))
    }

    pub fn tensor(&self, other: &Projector) -> Projector {
        Self(self.0.tensor(&other.0))
    }

    pub fn rank(&self) -> usize {
        libm::round(self.0.trace().re) as usize
    }

    pub fn as_operator(&self) -> &LinearOperator {
        &self.0
    }

    /// `<state|M|state>`, clamped to `[0, 1]`.
    pub fn weight(&self, state: &UnitVector) -> Result<f64> {
        let value = self.0.sandwich(state, state)?;
        if value.im.abs() > tol::BORN_IMAG {
            return Err(Error::NotProjector { deviation: value.im.abs() });
        }
        Ok(value.re.clamp(0.0, 1.0))
    }
}

impl Deref for Projector {
    type Target = LinearOperator;

    fn deref(&self) -> &LinearOperator {
        &self.0
    }
}

impl TryFrom<LinearOperator> for Projector {
    type Error = Error;

    fn try_from(op: LinearOperator) -> Result<Self> {
        Self::new(op)
    }
}

/// Born rule `<state|proj|state>` for unvalidated inputs.
///
/// Rejects a non-unit `state` and an operator that is not an orthogonal
/// projector; the result lies in `[0, 1]`.
pub fn born_weight(state: &ComplexVector, proj: &LinearOperator) -> Result<f64> {
    check_dims(state.dim(), proj.dim())?;
    let state = UnitVector::new(state.clone())?;
    let proj = Projector::new(proj.clone())?;
    proj.weight(&state)
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
