//! Shared pieces of the time-domain protocols: decoherence model, rotating
//! frame and segment propagation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hybrid::{Ops, SystemSpec, ENSEMBLE};
use crate::quantum::{Collapse, DensityMatrix, LindbladEvolution, Operator, UnitaryPropagator};
use crate::scalar::Real;

/// Transmon relaxation time quoted for typical devices, 20 μs.
pub const TYPICAL_T1: f64 = 20e-6;
/// Default bright-to-dark leakage rate, (3 μs)⁻¹.
pub const DEFAULT_DARK_LEAK_RATE: f64 = 1.0 / 3e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DecoherenceSpec<T: Real> {
    /// Transmon energy relaxation time in seconds.
    pub transmon_t1: Option<T>,
    /// Bright-mode leakage rate into dark modes in 1/s.
    pub dark_leak_rate: Option<T>,
}

impl<T: Real> DecoherenceSpec<T> {
    pub fn none() -> Self {
        Self { transmon_t1: None, dark_leak_rate: None }
    }

    /// `T₁ = 20 μs` and leakage `(3 μs)⁻¹`.
    pub fn typical() -> Self {
        Self { transmon_t1: Some(T::lit(TYPICAL_T1)), dark_leak_rate: Some(T::lit(DEFAULT_DARK_LEAK_RATE)) }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t1) = self.transmon_t1 {
            if !(t1 > T::zero() && t1.is_finite()) {
                return Err(Error::InvalidParameter(format!("transmon T1 {t1} must be positive")));
            }
        }
        if let Some(rate) = self.dark_leak_rate {
            if !(rate > T::zero() && rate.is_finite()) {
                return Err(Error::InvalidParameter(format!("dark leak rate {rate} must be positive")));
            }
        }
        Ok(())
    }

    pub fn is_none(&self) -> bool {
        self.transmon_t1.is_none() && self.dark_leak_rate.is_none()
    }

    /// `τ₋` at `1/T₁`; bright-mode `s` at the leak rate. Leakage is modeled
    /// as loss of the bright excitation: the dark sink couples to nothing, so
    /// transmon and bright-mode observables are unchanged by tracing it out.
    pub fn collapse_ops(&self, ops: &Ops<T>) -> Result<Vec<Collapse<T>>> {
        self.validate()?;
        let mut out = Vec::new();
        if let Some(t1) = self.transmon_t1 {
            out.push(Collapse::new(ops.tau_minus.clone(), T::one() / t1)?);
        }
        if let Some(rate) = self.dark_leak_rate {
            if ops.space.position(ENSEMBLE).is_ok() {
                out.push(Collapse::new(ops.lowering(ENSEMBLE)?, rate)?);
            }
        }
        Ok(out)
    }
}

/// Frequency of the frame rotating with the total excitation number: the
/// last partner of the system (ensemble or second spin).
pub fn frame_frequency<T: Real>(spec: &SystemSpec<T>) -> T {
    let pairs = spec.pairs();
    let last = pairs.last().expect("every system has a partner");
    spec.omega_t() - last.delta
}

/// `H − ω_f N`. Every Hamiltonian here conserves `N` and every collapse
/// operator lowers it by one, so populations are frame independent.
pub fn rotating_hamiltonian<T: Real>(h: &Operator<T>, spec: &SystemSpec<T>) -> Result<Operator<T>> {
    let n = spec.excitation_number()?;
    Ok(h - &n.scale_real(frame_frequency(spec)))
}

/// Propagates `ρ` for `t` under `h` (already in the rotating frame).
pub fn propagate<T: Real>(
    h: &Operator<T>,
    collapse: &[Collapse<T>],
    rho: &DensityMatrix<T>,
    t: T,
) -> Result<DensityMatrix<T>> {
    if collapse.is_empty() {
        UnitaryPropagator::new(h)?.apply_density(rho, t)
    } else {
        Ok(LindbladEvolution::new(h, collapse)?.evolve(rho, t)?.0)
    }
}

pub(crate) fn check_time<T: Real>(name: &str, t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} {t} must be a non-negative time")))
    }
}
