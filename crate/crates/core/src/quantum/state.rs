use nalgebra::{ComplexField, DMatrix, DVector};

use super::operator::Operator;
use super::space::HilbertSpace;
use crate::error::{Error, Result};
use crate::scalar::{cplx, Complex, Real};

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    space: HilbertSpace,
    amplitudes: DVector<Complex<T>>,
}

fn state_tolerance<T: Real>() -> T {
    T::lit(1e-10).max(T::eps() * T::lit(64.0))
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(space: HilbertSpace, amplitudes: DVector<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: amplitudes.len() });
        }
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > state_tolerance::<T>() {
            return Err(Error::InvalidState(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { space, amplitudes })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(space: HilbertSpace, amplitudes: DVector<Complex<T>>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == T::zero() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new(space, amplitudes.unscale(norm))
    }

    /// Computational basis state.
    pub fn basis(space: &HilbertSpace, index: usize) -> Result<Self> {
        let d = space.dim();
        if index >= d {
            return Err(Error::DimensionMismatch { expected: d, found: index });
        }
        let mut v = DVector::zeros(d);
        v[index] = cplx(T::one());
        Ok(Self { space: space.clone(), amplitudes: v })
    }

    /// Product basis state from `(label, level)` pairs; other factors in level 0.
    pub fn product(space: &HilbertSpace, levels: &[(&str, usize)]) -> Result<Self> {
        Self::basis(space, space.index_of_levels(levels)?)
    }

    pub(crate) fn from_raw(space: HilbertSpace, amplitudes: DVector<Complex<T>>) -> Self {
        Self { space, amplitudes }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &DVector<Complex<T>> {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes.norm()
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn probability(&self, index: usize) -> T {
        self.amplitudes[index].modulus_squared()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, op: &Operator<T>) -> Result<Complex<T>> {
        if &self.space != op.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.dotc(&(op.matrix() * &self.amplitudes)))
    }

    /// Probability of finding factor `label` in `level`.
    pub fn level_probability(&self, label: &str, level: usize) -> Result<T> {
        let pos = self.space.position(label)?;
        let mut p = T::zero();
        for i in 0..self.amplitudes.len() {
            if self.space.digits(i)[pos] == level {
                p += self.probability(i);
            }
        }
        Ok(p)
    }
}

/// Hermitian, unit-trace, positive semidefinite density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    space: HilbertSpace,
    matrix: DMatrix<Complex<T>>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates hermiticity, trace and positivity within 1e−10.
    pub fn new(space: HilbertSpace, matrix: DMatrix<Complex<T>>) -> Result<Self> {
        let tol = state_tolerance::<T>();
        let op = Operator::new(space, matrix)?;
        let d = op.dim();
        let mut asym = T::zero();
        for i in 0..d {
            for j in 0..d {
                asym = asym.max((op.get(i, j) - op.get(j, i).conj()).modulus());
            }
        }
        if asym > tol {
            return Err(Error::InvalidState(format!("not hermitian (asymmetry {asym})")));
        }
        let tr = op.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = op.eigenvalues()?.first().copied().unwrap_or_else(T::zero);
        if min < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
        }
        let space = op.space().clone();
        Ok(Self { space, matrix: op.into_matrix() })
    }

    pub fn from_pure(psi: &StateVector<T>) -> Self {
        let a = psi.amplitudes();
        Self { space: psi.space().clone(), matrix: a * a.adjoint() }
    }

    pub(crate) fn from_raw(space: HilbertSpace, matrix: DMatrix<Complex<T>>) -> Self {
        Self { space, matrix }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    pub fn population(&self, index: usize) -> T {
        self.matrix[(index, index)].re
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn fidelity_with(&self, psi: &StateVector<T>) -> Result<T> {
        if &self.space != psi.space() {
            return Err(Error::SpaceMismatch);
        }
        let a = psi.amplitudes();
        Ok(a.dotc(&(&self.matrix * a)).re)
    }

    /// `Tr(ρA)` (real part).
    pub fn expectation(&self, op: &Operator<T>) -> Result<T> {
        if &self.space != op.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok((&self.matrix * op.matrix()).trace().re)
    }

    /// Probability of finding factor `label` in `level`.
    pub fn level_probability(&self, label: &str, level: usize) -> Result<T> {
        let pos = self.space.position(label)?;
        let mut p = T::zero();
        for i in 0..self.matrix.nrows() {
            if self.space.digits(i)[pos] == level {
                p += self.population(i);
            }
        }
        Ok(p)
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &DMatrix<Complex<T>>) -> Self {
        Self { space: self.space.clone(), matrix: unitary * &self.matrix * unitary.adjoint() }
    }

    /// Non-selective projective measurement of factor `label`: removes all
    /// coherences between different levels of that factor.
    pub fn dephase_factor(&self, label: &str) -> Result<Self> {
        let pos = self.space.position(label)?;
        let d = self.matrix.nrows();
        let mut m = self.matrix.clone();
        for i in 0..d {
            let li = self.space.digits(i)[pos];
            for j in 0..d {
                if self.space.digits(j)[pos] != li {
                    m[(i, j)] = cplx(T::zero());
                }
            }
        }
        Ok(Self { space: self.space.clone(), matrix: m })
    }
}
