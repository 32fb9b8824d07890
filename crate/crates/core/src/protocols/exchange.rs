//! Virtual exchange between two subsystems sharing the transmon bus, and the
//! suppression of transmon-induced loss it enjoys.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hybrid::{dispersive_params, Ops, SystemKind, SystemSpec, CAVITY, ENSEMBLE, SPIN1, SPIN2, TRANSMON};
use crate::quantum::{Collapse, DensityMatrix, LindbladEvolution, StateVector, UnitaryPropagator};
use crate::scalar::Real;

use super::common::rotating_hamiltonian;
use super::swap::require_resonant;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExchangeOptions<T: Real> {
    /// Start with the transmon in `|↑⟩` instead of `|↓⟩`.
    pub transmon_excited: bool,
    /// End of the time grid; defaults to `π/|J|`.
    pub t_max: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExchangePoint {
    pub time_s: f64,
    pub p_first: f64,
    pub p_second: f64,
    pub predicted_first: f64,
    pub predicted_second: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExchangeResult {
    /// `|J|` or `|g_virtual|` in rad/s.
    pub rate: f64,
    /// `π/2|J|`, or `None` without exchange.
    pub transfer_time_s: Option<f64>,
    /// Population of the second subsystem at the transfer time.
    pub transfer_population: Option<f64>,
    pub max_deviation: f64,
    pub trace: Vec<ExchangePoint>,
}

fn partners<T: Real>(spec: &SystemSpec<T>) -> Result<(&'static str, &'static str, T, T)> {
    match spec {
        SystemSpec::Sts(s) => Ok((SPIN1, SPIN2, s.omega_s1, s.omega_s2)),
        SystemSpec::CTEns(s) => Ok((CAVITY, ENSEMBLE, s.omega_r, s.omega_s)),
        _ => Err(Error::KindMismatch { expected: "s-t-s or c-t-ens".into(), found: spec.kind().name().into() }),
    }
}

fn exchange_rate<T: Real>(spec: &SystemSpec<T>) -> Result<T> {
    let p = dispersive_params(spec)?;
    let j = match spec.kind() {
        SystemKind::Sts => p.j,
        _ => p.g_virtual,
    };
    Ok(j.map(|j| j.norm_sqr().sqrt()).unwrap_or_else(T::zero))
}

/// Exact evolution of one excitation placed in the first subsystem, compared
/// with `cos²(|J|t)` / `sin²(|J|t)` on `points` samples over `[0, t_max]`.
pub fn virtual_exchange_sim<T: Real>(
    spec: &SystemSpec<T>,
    points: usize,
    options: &ExchangeOptions<T>,
) -> Result<ExchangeResult> {
    let (first, second, w1, w2) = partners(spec)?;
    require_resonant(w1, w2)?;
    let rate = exchange_rate(spec)?;
    if points < 2 {
        return Err(Error::InvalidParameter(format!("exchange trace needs at least 2 points, got {points}")));
    }
    let t_max = match options.t_max {
        Some(t) if t > T::zero() && t.is_finite() => t,
        Some(t) => return Err(Error::InvalidParameter(format!("t_max {t} must be positive"))),
        None if rate > T::zero() => T::pi() / rate,
        None => return Err(Error::InvalidParameter("no exchange coupling; give t_max".into())),
    };
    let space = spec.space()?;
    let up = usize::from(options.transmon_excited);
    let start = space.index_of_levels(&[(first, 1), (TRANSMON, up)])?;
    let psi0 = StateVector::basis(&space, start)?;
    let u = UnitaryPropagator::new(&rotating_hamiltonian(&spec.hamiltonian()?, spec)?)?;
    let populations = |t: T| -> Result<(f64, f64)> {
        let psi = u.apply(&psi0, t)?;
        Ok((psi.level_probability(first, 1)?.as_f64(), psi.level_probability(second, 1)?.as_f64()))
    };
    let r = rate.as_f64();
    let dt = t_max / T::from_usize(points - 1).unwrap();
    let mut trace = Vec::with_capacity(points);
    let mut worst = 0.0f64;
    for k in 0..points {
        let t = dt * T::from_usize(k).unwrap();
        let (p1, p2) = populations(t)?;
        let c2 = (r * t.as_f64()).cos().powi(2);
        worst = worst.max((p1 - c2).abs()).max((p2 - (1.0 - c2)).abs());
        trace.push(ExchangePoint {
            time_s: t.as_f64(),
            p_first: p1,
            p_second: p2,
            predicted_first: c2,
            predicted_second: 1.0 - c2,
        });
    }
    let (transfer_time_s, transfer_population) = if rate > T::zero() {
        let t = T::pi() / (T::lit(2.0) * rate);
        (Some(t.as_f64()), Some(populations(t)?.1))
    } else {
        (None, None)
    };
    Ok(ExchangeResult { rate: r, transfer_time_s, transfer_population, max_deviation: worst, trace })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtectionFactor {
    pub partner: String,
    /// `(g/Δ)²`.
    pub factor: f64,
}

/// Fraction of the transmon decay rate inherited by each partner.
pub fn protection_factor<T: Real>(spec: &SystemSpec<T>) -> Result<Vec<ProtectionFactor>> {
    let p = dispersive_params(spec)?;
    Ok(p
        .pairs
        .iter()
        .map(|x| {
            let r = x.ratio().as_f64();
            ProtectionFactor { partner: x.partner.to_string(), factor: if r.is_finite() { r * r } else { 0.0 } }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtectionCheck {
    /// Mean `(g/Δ)²` of the two partners over `T₁`.
    pub predicted_rate: f64,
    /// Loss rate of the partner excitation under transmon `T₁` decay.
    pub measured_rate: f64,
    pub window_s: (f64, f64),
}

/// Measures the excitation-loss rate during virtual exchange with transmon
/// relaxation `t1`. The rate is taken between `5·T₁` (after the bare-state
/// transient) and one exchange period later.
pub fn protection_dynamic<T: Real>(spec: &SystemSpec<T>, t1: T) -> Result<ProtectionCheck> {
    let (first, second, _, _) = partners(spec)?;
    if !(t1 > T::zero() && t1.is_finite()) {
        return Err(Error::InvalidParameter(format!("T1 {t1} must be positive")));
    }
    let rate = exchange_rate(spec)?;
    if rate == T::zero() {
        return Err(Error::InvalidParameter("no exchange coupling".into()));
    }
    let factors = protection_factor(spec)?;
    let mean = factors.iter().map(|f| f.factor).sum::<f64>() / factors.len() as f64;
    let space = spec.space()?;
    let ops = Ops::new(space.clone())?;
    let lind = LindbladEvolution::new(
        &rotating_hamiltonian(&spec.hamiltonian()?, spec)?,
        &[Collapse::new(ops.tau_minus.clone(), T::one() / t1)?],
    )?;
    let start = space.index_of_levels(&[(first, 1)])?;
    let rho0 = DensityMatrix::from_pure(&StateVector::basis(&space, start)?);
    let kept = |rho: &DensityMatrix<T>| -> Result<f64> {
        Ok((rho.level_probability(first, 1)? + rho.level_probability(second, 1)?).as_f64())
    };
    let ta = t1 * T::lit(5.0);
    let tb = ta + T::two_pi() / rate;
    let rho_a = lind.evolve(&rho0, ta)?.0;
    let rho_b = lind.evolve(&rho_a, tb - ta)?.0;
    let measured = (kept(&rho_a)? / kept(&rho_b)?).ln() / (tb - ta).as_f64();
    Ok(ProtectionCheck {
        predicted_rate: mean / t1.as_f64(),
        measured_rate: measured,
        window_s: (ta.as_f64(), tb.as_f64()),
    })
}
