//! Resonant transmon–ensemble SWAP.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hybrid::{Ops, SystemKind, SystemSpec, ENSEMBLE, TRANSMON};
use crate::quantum::{DensityMatrix, LindbladEvolution, StateVector, UnitaryPropagator};
use crate::scalar::Real;

use super::common::{rotating_hamiltonian, DecoherenceSpec};
use super::fit::fit_sinusoid;

/// Relative detuning accepted as resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapTracePoint {
    pub time_s: f64,
    /// Population of `|↓, B⟩`.
    pub p_bright: f64,
    /// Population of `|↑, G⟩`.
    pub p_transmon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapResult {
    /// `π/2g`.
    pub swap_time_s: f64,
    /// `|⟨↓, B|ψ(π/2g)⟩|²` (or `⟨↓B|ρ|↓B⟩`).
    pub fidelity: f64,
    pub trace: Vec<SwapTracePoint>,
    /// Angular frequency fitted to the `|↓, B⟩` trace.
    pub fitted_angular_frequency: f64,
    /// Largest residual of that fit.
    pub fit_residual: f64,
}

pub(crate) fn require_resonant<T: Real>(a: T, b: T) -> Result<()> {
    let rel = ((a - b) / a).abs().as_f64();
    if rel > RESONANCE_TOLERANCE {
        Err(Error::NotResonant(rel))
    } else {
        Ok(())
    }
}

/// Evolves `|↑⟩⊗|G⟩` under the resonant t-ens Hamiltonian. The trace covers
/// one Rabi period `[0, π/g]` with `points` samples.
pub fn swap_sim<T: Real>(spec: &SystemSpec<T>, decoherence: &DecoherenceSpec<T>, points: usize) -> Result<SwapResult> {
    let SystemSpec::TEns(s) = spec else {
        return Err(Error::KindMismatch { expected: SystemKind::TEns.name().into(), found: spec.kind().name().into() });
    };
    require_resonant(s.omega_t, s.omega_s)?;
    if points < 4 {
        return Err(Error::InvalidParameter(format!("swap trace needs at least 4 points, got {points}")));
    }
    let g = s.g.norm_sqr().sqrt();
    if g == T::zero() {
        return Err(Error::InvalidParameter("SWAP needs a non-zero coupling".into()));
    }
    let space = spec.space()?;
    let ops = Ops::new(space.clone())?;
    let h = rotating_hamiltonian(&spec.hamiltonian()?, spec)?;
    let start = space.index_of_levels(&[(TRANSMON, 1), (ENSEMBLE, 0)])?;
    let bright = space.index_of_levels(&[(TRANSMON, 0), (ENSEMBLE, 1)])?;
    let rho0 = DensityMatrix::from_pure(&StateVector::basis(&space, start)?);
    let collapse = decoherence.collapse_ops(&ops)?;
    let t_swap = T::pi() / (T::lit(2.0) * g);
    let period = T::pi() / g;
    let dt = period / T::from_usize(points - 1).unwrap();

    let mut trace = Vec::with_capacity(points);
    let fidelity;
    if collapse.is_empty() {
        let u = UnitaryPropagator::new(&h)?;
        let psi0 = StateVector::basis(&space, start)?;
        for k in 0..points {
            let t = dt * T::from_usize(k).unwrap();
            let psi = u.apply(&psi0, t)?;
            trace.push(point(t, psi.probability(bright), psi.probability(start)));
        }
        fidelity = u.apply(&psi0, t_swap)?.probability(bright);
    } else {
        let lind = LindbladEvolution::new(&h, &collapse)?;
        let mut rho = rho0.clone();
        trace.push(point(T::zero(), rho.population(bright), rho.population(start)));
        for k in 1..points {
            rho = lind.evolve(&rho, dt)?.0;
            let t = dt * T::from_usize(k).unwrap();
            trace.push(point(t, rho.population(bright), rho.population(start)));
        }
        fidelity = lind.evolve(&rho0, t_swap)?.0.population(bright);
    }
    let times: Vec<f64> = trace.iter().map(|p| p.time_s).collect();
    let values: Vec<f64> = trace.iter().map(|p| p.p_bright).collect();
    let two_g = 2.0 * g.as_f64();
    let fit = fit_sinusoid(&times, &values, 0.75 * two_g, 1.25 * two_g)?;
    Ok(SwapResult {
        swap_time_s: t_swap.as_f64(),
        fidelity: fidelity.as_f64(),
        trace,
        fitted_angular_frequency: fit.omega,
        fit_residual: fit.max_residual,
    })
}

fn point<T: Real>(t: T, p_bright: T, p_transmon: T) -> SwapTracePoint {
    SwapTracePoint { time_s: t.as_f64(), p_bright: p_bright.as_f64(), p_transmon: p_transmon.as_f64() }
}
