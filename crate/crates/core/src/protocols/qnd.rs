//! Pulse sequences on the cavity–transmon–ensemble (or transmon–ensemble)
//! system and the dispersive QND readout of the ensemble bright mode.
//!
//! Pulses act instantaneously. A pulse at angular frequency `f` with
//! duration `τ` rotates the transmon in every block of fixed partner levels
//! whose dispersive transmon transition lies within half its bandwidth,
//! `|f − ν|/2π < 1/(2τ)`, and leaves the other blocks untouched. Rotations are
//! about `x` in the rotating frame.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hybrid::{dispersive_hamiltonian, dispersive_params, Ops, SystemKind, SystemSpec, CAVITY, ENSEMBLE, TRANSMON};
use crate::quantum::{DensityMatrix, Operator, StateVector};
use crate::scalar::{Complex, Real};

use super::common::{check_time, propagate, rotating_hamiltonian, DecoherenceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Selectivity {
    Selective,
    NonSelective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Feasibility {
    Feasible,
    /// Pulse lasts more than a tenth of the leakage time.
    Marginal,
    /// Pulse outlasts the leakage time.
    Infeasible,
}

/// Selective iff the bandwidth `1/τ` is below the level spacing `2χ/2π`.
pub fn pulse_bandwidth_check<T: Real>(chi: T, duration: T) -> Selectivity {
    let spacing = T::lit(2.0) * chi.abs() / T::two_pi();
    if T::one() / duration < spacing {
        Selectivity::Selective
    } else {
        Selectivity::NonSelective
    }
}

/// Compares a pulse duration with the dark-mode leakage time.
pub fn sequence_feasibility<T: Real>(duration: T, leak_rate: T) -> Feasibility {
    let x = duration * leak_rate;
    if x >= T::one() {
        Feasibility::Infeasible
    } else if x > T::lit(0.1) {
        Feasibility::Marginal
    } else {
        Feasibility::Feasible
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step<T: Real> {
    /// Tunes the transmon so its cavity-dressed frequency sits `Δ` above the
    /// ensemble; `None` restores the system's own `ω_t`.
    SetDetuning(Option<T>),
    Wait(T),
    PiPulse { target: Target, frequency: T, duration: T },
    HalfPiPulse { target: Target, frequency: T, duration: T },
    Project(Target),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    Transmon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence<T: Real> {
    pub steps: Vec<Step<T>>,
}

impl<T: Real> PulseSequence<T> {
    pub fn new(steps: Vec<Step<T>>) -> Result<Self> {
        let seq = Self { steps };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        let mut projections = 0;
        for (i, step) in self.steps.iter().enumerate() {
            let bad = |msg: String| Error::InvalidSequence(format!("step {i}: {msg}"));
            match *step {
                Step::SetDetuning(Some(d)) if !d.is_finite() => return Err(bad(format!("detuning {d} not finite"))),
                Step::Wait(t) if !(t >= T::zero() && t.is_finite()) => return Err(bad(format!("wait {t} negative"))),
                Step::PiPulse { frequency, duration, .. } | Step::HalfPiPulse { frequency, duration, .. } => {
                    if !(frequency > T::zero() && frequency.is_finite()) {
                        return Err(bad(format!("pulse frequency {frequency} not positive")));
                    }
                    if !(duration > T::zero() && duration.is_finite()) {
                        return Err(bad(format!("pulse duration {duration} not positive")));
                    }
                }
                Step::Project(_) => projections += 1,
                _ => {}
            }
        }
        if projections > 1 {
            return Err(Error::InvalidSequence(format!("{projections} measurements, at most one allowed")));
        }
        Ok(())
    }

    /// Excite at the `s†s = 0` transition, tune into resonance, SWAP for
    /// `π/2g`, detune back and probe at the same frequency.
    pub fn qnd_readout(spec: &SystemSpec<T>, pulse_duration: T) -> Result<Self> {
        let f = transmon_transition_at(spec, spec.omega_t(), 0)?;
        let g = ensemble_coupling(spec)?;
        let pulse = Step::PiPulse { target: Target::Transmon, frequency: f, duration: pulse_duration };
        Self::new(vec![
            pulse,
            Step::SetDetuning(Some(T::zero())),
            Step::Wait(T::pi() / (T::lit(2.0) * g)),
            Step::SetDetuning(None),
            pulse,
            Step::Project(Target::Transmon),
        ])
    }

    /// [`Self::qnd_readout`] without the tuning and SWAP steps.
    pub fn without_swap(spec: &SystemSpec<T>, pulse_duration: T) -> Result<Self> {
        let f = transmon_transition_at(spec, spec.omega_t(), 0)?;
        let pulse = Step::PiPulse { target: Target::Transmon, frequency: f, duration: pulse_duration };
        Self::new(vec![pulse, pulse, Step::Project(Target::Transmon)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dynamics {
    /// Full Hamiltonian for every wait.
    Exact,
    /// Dispersive Hamiltonian for waits at dispersive working points; the
    /// full Hamiltonian near resonance.
    Dispersive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnsembleInference {
    /// `s†|G⟩`: the probe left the transmon in `|↓⟩`.
    Bright,
    /// `|G⟩`: the probe excited the transmon.
    Ground,
}

impl EnsembleInference {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Bright => "s†|G⟩",
            Self::Ground => "|G⟩",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QndRecord<T: Real> {
    /// Transmon excitation probability after the probe pulse.
    pub p_excited_probe: f64,
    /// Transmon excitation probability just before the probe pulse.
    pub p_excited_before_probe: f64,
    pub inferred: EnsembleInference,
    /// Probability of the inferred readout outcome.
    pub p_inferred: f64,
    /// Population of the bright-mode one-excitation state at the end.
    pub p_bright: f64,
    /// `⟨s†s⟩` before the probe pulse and at the end of the sequence.
    pub ensemble_number_before_probe: f64,
    pub ensemble_number_after_probe: f64,
    /// Largest change of `⟨N⟩` across any wait without decoherence.
    pub max_excitation_drift: f64,
    /// State after the last step, for continuing without re-preparation.
    #[serde(skip)]
    pub final_state: DensityMatrix<T>,
}

fn ensemble_coupling<T: Real>(spec: &SystemSpec<T>) -> Result<T> {
    let pair = spec
        .pairs()
        .into_iter()
        .find(|p| p.partner == ENSEMBLE)
        .ok_or_else(|| Error::KindMismatch { expected: "t-ens or c-t-ens".into(), found: spec.kind().name().into() })?;
    let g = pair.g.norm_sqr().sqrt();
    if g == T::zero() {
        return Err(Error::InvalidParameter("ensemble coupling is zero".into()));
    }
    Ok(g)
}

/// Bare `ω_t` putting the cavity-dressed transmon `Δ` above the ensemble:
/// solves `ω + |g_tc|²/(ω − ω_r) = ω_s + Δ`.
pub fn dressed_tuning<T: Real>(spec: &SystemSpec<T>, detuning: T) -> T {
    match spec {
        SystemSpec::CTEns(s) => {
            let target = s.omega_s + detuning;
            let g2 = s.g_tc.norm_sqr();
            let mut w = target;
            for _ in 0..100 {
                let next = target - g2 / (w - s.omega_r);
                if (next - w).abs() <= T::eps() * target {
                    return next;
                }
                w = next;
            }
            w
        }
        SystemSpec::TEns(s) => s.omega_s + detuning,
        _ => spec.omega_t(),
    }
}

/// Dispersive transmon transition with the ensemble in Fock level `n` and
/// the cavity empty, for bare transmon frequency `omega_t`.
pub fn transmon_transition_at<T: Real>(spec: &SystemSpec<T>, omega_t: T, n: usize) -> Result<T> {
    let at = spec.with_omega_t(omega_t);
    let h = dispersive_hamiltonian(&at)?;
    let space = at.space()?;
    let mut levels = vec![(ENSEMBLE, n)];
    if space.position(CAVITY).is_ok() {
        levels.push((CAVITY, 0));
    }
    let mut up = levels.clone();
    up.push((TRANSMON, 1));
    levels.push((TRANSMON, 0));
    let iu = space.index_of_levels(&up)?;
    let id = space.index_of_levels(&levels)?;
    Ok(h.get(iu, iu).re - h.get(id, id).re)
}

/// Instantaneous rotation by `theta` about `x` of the transmon, applied in
/// every block whose transition lies inside the pulse bandwidth.
fn conditional_rotation<T: Real>(
    spec: &SystemSpec<T>,
    theta: T,
    frequency: T,
    duration: T,
) -> Result<Operator<T>> {
    dispersive_params(spec).map_err(|e| match e {
        Error::NonDispersive { ratio, .. } => {
            Error::InvalidSequence(format!("pulse applied at a non-dispersive working point (|g/Delta| = {ratio:.3})"))
        }
        other => other,
    })?;
    let h = dispersive_hamiltonian(spec)?;
    let space = spec.space()?;
    let t = space.position(TRANSMON)?;
    let half_band = T::pi() / duration;
    let (s, c) = (theta / T::lit(2.0)).sin_cos();
    let d = space.dim();
    let mut m = nalgebra::DMatrix::<Complex<T>>::zeros(d, d);
    for i in 0..d {
        let mut digits = space.digits(i);
        if digits[t] == 1 {
            continue;
        }
        digits[t] = 1;
        let j = space.index(&digits)?;
        let nu = h.get(j, j).re - h.get(i, i).re;
        if (frequency - nu).abs() < half_band {
            m[(i, i)] = Complex::new(c, T::zero());
            m[(j, j)] = Complex::new(c, T::zero());
            m[(i, j)] = Complex::new(T::zero(), -s);
            m[(j, i)] = Complex::new(T::zero(), -s);
        } else {
            m[(i, i)] = Complex::new(T::one(), T::zero());
            m[(j, j)] = Complex::new(T::one(), T::zero());
        }
    }
    Operator::new(space, m)
}

/// Runs `seq` from the all-ground state.
pub fn qnd_sequence_sim<T: Real>(
    spec: &SystemSpec<T>,
    seq: &PulseSequence<T>,
    decoherence: &DecoherenceSpec<T>,
    dynamics: Dynamics,
) -> Result<QndRecord<T>> {
    let space = spec.space()?;
    let rho0 = DensityMatrix::from_pure(&StateVector::basis(&space, 0)?);
    qnd_sequence_from(spec, seq, decoherence, dynamics, &rho0)
}

/// Runs `seq` from `rho0`, for repeated probes without re-preparation.
pub fn qnd_sequence_from<T: Real>(
    spec: &SystemSpec<T>,
    seq: &PulseSequence<T>,
    decoherence: &DecoherenceSpec<T>,
    dynamics: Dynamics,
    rho0: &DensityMatrix<T>,
) -> Result<QndRecord<T>> {
    if !matches!(spec.kind(), SystemKind::TEns | SystemKind::CTEns) {
        return Err(Error::KindMismatch { expected: "t-ens or c-t-ens".into(), found: spec.kind().name().into() });
    }
    dispersive_params(spec)?;
    seq.validate()?;
    let space = spec.space()?;
    if rho0.space() != &space {
        return Err(Error::SpaceMismatch);
    }
    let ops = Ops::new(space.clone())?;
    let collapse = decoherence.collapse_ops(&ops)?;
    let excitations = spec.excitation_number()?;
    let n_s = ops.number(ENSEMBLE)?;
    let tau_up = ops.tau_plus.try_mul(&ops.tau_minus)?;
    let last_pulse = seq
        .steps
        .iter()
        .rposition(|s| matches!(s, Step::PiPulse { .. } | Step::HalfPiPulse { .. }));

    let mut current = *spec;
    let mut rho = rho0.clone();
    let mut drift = T::zero();
    let mut before_probe = (T::zero(), rho.expectation(&n_s)?);
    let mut measured: Option<T> = None;
    for (i, step) in seq.steps.iter().enumerate() {
        if Some(i) == last_pulse {
            before_probe = (rho.expectation(&tau_up)?, rho.expectation(&n_s)?);
        }
        match *step {
            Step::SetDetuning(d) => {
                let omega = match d {
                    Some(d) => dressed_tuning(spec, d),
                    None => spec.omega_t(),
                };
                current = spec.with_omega_t(omega);
            }
            Step::Wait(t) => {
                check_time("wait", t)?;
                let h = match dynamics {
                    Dynamics::Dispersive if dispersive_params(&current).is_ok() => dispersive_hamiltonian(&current)?,
                    _ => current.hamiltonian()?,
                };
                let h = rotating_hamiltonian(&h, &current)?;
                let n_before = rho.expectation(&excitations)?;
                rho = propagate(&h, &collapse, &rho, t)?;
                if collapse.is_empty() {
                    drift = drift.max((rho.expectation(&excitations)? - n_before).abs());
                }
            }
            Step::PiPulse { frequency, duration, .. } => {
                let r = conditional_rotation(&current, T::pi(), frequency, duration)?;
                rho = rho.conjugate_by(r.matrix());
            }
            Step::HalfPiPulse { frequency, duration, .. } => {
                let r = conditional_rotation(&current, T::pi() / T::lit(2.0), frequency, duration)?;
                rho = rho.conjugate_by(r.matrix());
            }
            Step::Project(_) => {
                measured = Some(rho.expectation(&tau_up)?);
                rho = rho.dephase_factor(TRANSMON)?;
            }
        }
    }
    let p_up = match measured {
        Some(p) => p,
        None => rho.expectation(&tau_up)?,
    };
    let inferred = if p_up < T::lit(0.5) { EnsembleInference::Bright } else { EnsembleInference::Ground };
    let p_inferred = match inferred {
        EnsembleInference::Bright => T::one() - p_up,
        EnsembleInference::Ground => p_up,
    };
    let p_bright = rho.level_probability(ENSEMBLE, 1)?;
    Ok(QndRecord {
        p_excited_probe: p_up.as_f64(),
        p_excited_before_probe: before_probe.0.as_f64(),
        inferred,
        p_inferred: p_inferred.as_f64(),
        p_bright: p_bright.as_f64(),
        ensemble_number_before_probe: before_probe.1.as_f64(),
        ensemble_number_after_probe: rho.expectation(&n_s)?.as_f64(),
        max_excitation_drift: drift.as_f64(),
        final_state: rho,
    })
}
