//! Closed-system evolution `exp(−iHt)` through the eigen-decomposition of `H`.
//!
//! `H` is in angular-frequency units (ħ = 1) and `t` in seconds.

use nalgebra::{DMatrix, DVector};

use super::operator::{Eigen, Operator};
use super::space::HilbertSpace;
use super::state::{DensityMatrix, StateVector};
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

/// Reusable propagator for a fixed Hamiltonian.
#[derive(Debug, Clone)]
pub struct UnitaryPropagator<T: Real> {
    space: HilbertSpace,
    eigen: Eigen<T>,
}

impl<T: Real> UnitaryPropagator<T> {
    pub fn new(hamiltonian: &Operator<T>) -> Result<Self> {
        let eigen = hamiltonian.eigh()?;
        Ok(Self { space: hamiltonian.space().clone(), eigen })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn eigen(&self) -> &Eigen<T> {
        &self.eigen
    }

    fn phases(&self, t: T) -> Vec<Complex<T>> {
        self.eigen
            .values
            .iter()
            .map(|&e| {
                let (s, c) = (-(e * t)).sin_cos();
                Complex::new(c, s)
            })
            .collect()
    }

    /// `exp(−iHt)` as a dense matrix.
    pub fn unitary(&self, t: T) -> DMatrix<Complex<T>> {
        let v = &self.eigen.vectors;
        let phases = self.phases(t);
        let mut scaled = v.clone();
        for (j, p) in phases.iter().enumerate() {
            for i in 0..scaled.nrows() {
                scaled[(i, j)] *= *p;
            }
        }
        scaled * v.adjoint()
    }

    pub fn apply(&self, psi: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        if psi.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let v = &self.eigen.vectors;
        let mut coeffs: DVector<Complex<T>> = v.adjoint() * psi.amplitudes();
        for (c, p) in coeffs.iter_mut().zip(self.phases(t)) {
            *c *= p;
        }
        Ok(StateVector::from_raw(self.space.clone(), v * coeffs))
    }

    pub fn apply_density(&self, rho: &DensityMatrix<T>, t: T) -> Result<DensityMatrix<T>> {
        if rho.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(rho.conjugate_by(&self.unitary(t)))
    }
}

/// `ψ(t) = exp(−iHt) ψ0`.
pub fn evolve_unitary<T: Real>(hamiltonian: &Operator<T>, psi0: &StateVector<T>, t: T) -> Result<StateVector<T>> {
    if hamiltonian.space() != psi0.space() {
        return Err(Error::SpaceMismatch);
    }
    UnitaryPropagator::new(hamiltonian)?.apply(psi0, t)
}

/// `exp(A)` for an anti-hermitian generator `A` (so the result is unitary).
pub fn exp_antihermitian<T: Real>(generator: &Operator<T>) -> Result<DMatrix<Complex<T>>> {
    // A = −iK with K = iA hermitian, so exp(A) = exp(−iK·1).
    let k = generator.scale(Complex::new(T::zero(), T::one()));
    Ok(UnitaryPropagator::new(&k)?.unitary(T::one()))
}
