//! Lindblad master equation with amplitude-damping style collapse operators.
//!
//! The coherent part is propagated exactly in the eigenbasis of `H`; the
//! dissipator is integrated with classical fixed-step RK4 in that rotating
//! (interaction) picture, i.e. the integrating-factor form of RK4. The step
//! count is doubled until halving the step moves every entry of `ρ(t)` by
//! less than the convergence tolerance.

use nalgebra::{ComplexField, DMatrix};

use super::evolution::UnitaryPropagator;
use super::operator::Operator;
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cplx, Complex, Real};

/// Largest step count tried before giving up.
pub const MAX_STEPS: usize = 1 << 22;

/// Convergence threshold on the max-entry change when the step is halved.
pub fn step_tolerance<T: Real>() -> T {
    T::lit(1e-8).max(T::eps() * T::lit(1e4))
}

/// Collapse operator with its rate in 1/s.
#[derive(Debug, Clone)]
pub struct Collapse<T: Real> {
    pub op: Operator<T>,
    pub rate: T,
}

impl<T: Real> Collapse<T> {
    pub fn new(op: Operator<T>, rate: T) -> Result<Self> {
        if !(rate >= T::zero()) {
            return Err(Error::InvalidParameter(format!("collapse rate {rate} is negative")));
        }
        Ok(Self { op, rate })
    }
}

/// Precomputed open-system propagator for fixed `H` and collapse set.
#[derive(Debug, Clone)]
pub struct LindbladEvolution<T: Real> {
    propagator: UnitaryPropagator<T>,
    /// `√γ L` in the eigenbasis of `H`.
    jumps: Vec<DMatrix<Complex<T>>>,
    /// `½ Σ γ L†L` in the eigenbasis of `H`.
    half_anti: DMatrix<Complex<T>>,
    total_rate: T,
}

impl<T: Real> LindbladEvolution<T> {
    pub fn new(hamiltonian: &Operator<T>, collapse: &[Collapse<T>]) -> Result<Self> {
        let propagator = UnitaryPropagator::new(hamiltonian)?;
        let v = propagator.eigen().vectors.clone();
        let vd = v.adjoint();
        let d = hamiltonian.dim();
        let mut jumps = Vec::with_capacity(collapse.len());
        let mut half_anti = DMatrix::zeros(d, d);
        let mut total_rate = T::zero();
        for c in collapse {
            if c.op.space() != hamiltonian.space() {
                return Err(Error::SpaceMismatch);
            }
            if !(c.rate >= T::zero()) {
                return Err(Error::InvalidParameter(format!("collapse rate {} is negative", c.rate)));
            }
            if c.rate == T::zero() {
                continue;
            }
            let l = (&vd * c.op.matrix() * &v) * cplx(c.rate.sqrt());
            half_anti += (l.adjoint() * &l) * cplx(T::lit(0.5));
            total_rate += c.rate * c.op.max_abs().powi(2);
            jumps.push(l);
        }
        Ok(Self { propagator, jumps, half_anti, total_rate })
    }

    fn dissipator(&self, x: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
        let mut out = -(&self.half_anti * x + x * &self.half_anti);
        for l in &self.jumps {
            out += l * x * l.adjoint();
        }
        out
    }

    fn phase_matrix(&self, h: T) -> DMatrix<Complex<T>> {
        let e = &self.propagator.eigen().values;
        let d = e.len();
        DMatrix::from_fn(d, d, |i, j| {
            let (s, c) = (-(e[i] - e[j]) * h).sin_cos();
            Complex::new(c, s)
        })
    }

    /// Integrating-factor RK4 in the eigenbasis with `steps` equal steps.
    fn integrate(&self, rho_eig: &DMatrix<Complex<T>>, t: T, steps: usize) -> DMatrix<Complex<T>> {
        let h = t / T::from_usize(steps).unwrap();
        let full = self.phase_matrix(h);
        let half = self.phase_matrix(h / T::lit(2.0));
        let (ch, ch2, ch3, ch6) = (cplx(h), cplx(h / T::lit(2.0)), cplx(h / T::lit(3.0)), cplx(h / T::lit(6.0)));
        let mut y = rho_eig.clone();
        for _ in 0..steps {
            let k1 = self.dissipator(&y);
            let k2 = self.dissipator(&(&y + &k1 * ch2).component_mul(&half));
            let k3 = self.dissipator(&(y.component_mul(&half) + &k2 * ch2));
            let k4 = self.dissipator(&(y.component_mul(&full) + (&k3 * ch).component_mul(&half)));
            y = (&y + &k1 * ch6).component_mul(&full) + ((&k2 + &k3) * ch3).component_mul(&half) + &k4 * ch6;
        }
        y
    }

    /// Initial step count: resolve both the dissipative rate and the
    /// frequency spread seen by the rotating-frame dissipator.
    fn initial_steps(&self, t: T) -> usize {
        let e = &self.propagator.eigen().values;
        let spread = match (e.first(), e.last()) {
            (Some(&a), Some(&b)) => b - a,
            _ => T::zero(),
        };
        let scale = (self.total_rate * T::lit(4.0)).max(spread * T::lit(0.25));
        let n = (scale * t).as_f64().ceil();
        (n.max(8.0).min(MAX_STEPS as f64)) as usize
    }

    /// `ρ(t)` and the step count that met the convergence tolerance.
    pub fn evolve(&self, rho0: &DensityMatrix<T>, t: T) -> Result<(DensityMatrix<T>, usize)> {
        if rho0.space() != self.propagator.space() {
            return Err(Error::SpaceMismatch);
        }
        if !(t >= T::zero()) {
            return Err(Error::InvalidParameter(format!("evolution time {t} is negative")));
        }
        if self.jumps.is_empty() || t == T::zero() {
            return Ok((self.propagator.apply_density(rho0, t)?, 0));
        }
        let v = &self.propagator.eigen().vectors;
        let rho_eig = v.adjoint() * rho0.matrix() * v;
        let tol = step_tolerance::<T>();
        let mut steps = self.initial_steps(t);
        let mut coarse = self.integrate(&rho_eig, t, steps);
        loop {
            if steps * 2 > MAX_STEPS {
                return Err(Error::NotConverged(format!(
                    "Lindblad step halving still above {tol} at {steps} steps"
                )));
            }
            let fine = self.integrate(&rho_eig, t, steps * 2);
            let change = (&fine - &coarse).iter().fold(T::zero(), |m, z| m.max(z.modulus()));
            steps *= 2;
            coarse = fine;
            if change < tol {
                break;
            }
        }
        let lab = v * coarse * v.adjoint();
        Ok((DensityMatrix::from_raw(rho0.space().clone(), lab), steps))
    }
}

/// One-shot Lindblad evolution; see [`LindbladEvolution`].
pub fn evolve_damped<T: Real>(
    hamiltonian: &Operator<T>,
    collapse: &[Collapse<T>],
    rho0: &DensityMatrix<T>,
    t: T,
) -> Result<DensityMatrix<T>> {
    Ok(LindbladEvolution::new(hamiltonian, collapse)?.evolve(rho0, t)?.0)
}
