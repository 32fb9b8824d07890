//! Coupled-system specifications and their full rotating-wave Hamiltonians.
//!
//! The transmon is the two-level `τ` system throughout. Couplings are complex:
//! `g` multiplies the raising-of-the-partner term (`σ₊τ₋`, `s†τ₋`, `a†τ₋`)
//! and `g*` its conjugate.

use crate::error::{Error, Result};
use crate::quantum::{embed, ladder, local_identity, number, sigma_minus, sigma_z, HilbertSpace, Operator};
use crate::scalar::{Complex, Real};

pub const TRANSMON: &str = "transmon";
pub const SPIN: &str = "spin";
pub const SPIN1: &str = "spin1";
pub const SPIN2: &str = "spin2";
pub const ENSEMBLE: &str = "ensemble";
pub const CAVITY: &str = "cavity";

/// Default Fock truncation of the cavity and ensemble modes.
pub const DEFAULT_BOSON_LEVELS: usize = 5;
/// Smallest accepted bosonic truncation.
pub const MIN_BOSON_LEVELS: usize = 3;

fn frequency<T: Real>(name: &str, w: T) -> Result<()> {
    if w > T::zero() && w.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be a positive finite frequency, got {w}")))
    }
}

fn coupling<T: Real>(name: &str, g: Complex<T>) -> Result<()> {
    if g.re.is_finite() && g.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} is not finite")))
    }
}

fn levels(name: &str, n: usize) -> Result<()> {
    if n >= MIN_BOSON_LEVELS {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} truncation {n} is below {MIN_BOSON_LEVELS}")))
    }
}

/// Transmon and one spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsSpec<T: Real> {
    pub omega_t: T,
    pub omega_s: T,
    pub g: Complex<T>,
}

/// Transmon and the ensemble bright mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TEnsSpec<T: Real> {
    pub omega_t: T,
    pub omega_s: T,
    pub g: Complex<T>,
    pub ensemble_levels: usize,
}

/// Two spins on a transmon bus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StsSpec<T: Real> {
    pub omega_t: T,
    pub omega_s1: T,
    pub omega_s2: T,
    pub g1: Complex<T>,
    pub g2: Complex<T>,
}

/// Cavity, transmon and ensemble bright mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CTEnsSpec<T: Real> {
    pub omega_r: T,
    pub omega_t: T,
    pub omega_s: T,
    pub g_tc: Complex<T>,
    pub g_ens: Complex<T>,
    pub cavity_levels: usize,
    pub ensemble_levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    Ts,
    TEns,
    Sts,
    CTEns,
}

impl SystemKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ts => "ts",
            Self::TEns => "t-ens",
            Self::Sts => "s-t-s",
            Self::CTEns => "c-t-ens",
        }
    }
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemSpec<T: Real> {
    Ts(TsSpec<T>),
    TEns(TEnsSpec<T>),
    Sts(StsSpec<T>),
    CTEns(CTEnsSpec<T>),
}

/// One transmon–partner coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct Pair<T: Real> {
    /// Factor label of the partner.
    pub partner: &'static str,
    pub g: Complex<T>,
    /// `Δ = ω_t − ω_partner`.
    pub delta: T,
    /// Partner is a truncated boson (ensemble mode or cavity).
    pub bosonic: bool,
}

impl<T: Real> SystemSpec<T> {
    pub fn kind(&self) -> SystemKind {
        match self {
            Self::Ts(_) => SystemKind::Ts,
            Self::TEns(_) => SystemKind::TEns,
            Self::Sts(_) => SystemKind::Sts,
            Self::CTEns(_) => SystemKind::CTEns,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Ts(s) => {
                frequency("omega_t", s.omega_t)?;
                frequency("omega_s", s.omega_s)?;
                coupling("g_ts", s.g)
            }
            Self::TEns(s) => {
                frequency("omega_t", s.omega_t)?;
                frequency("omega_s", s.omega_s)?;
                coupling("g_t-ens", s.g)?;
                levels("ensemble", s.ensemble_levels)
            }
            Self::Sts(s) => {
                frequency("omega_t", s.omega_t)?;
                frequency("omega_s1", s.omega_s1)?;
                frequency("omega_s2", s.omega_s2)?;
                coupling("g_ts1", s.g1)?;
                coupling("g_ts2", s.g2)
            }
            Self::CTEns(s) => {
                frequency("omega_r", s.omega_r)?;
                frequency("omega_t", s.omega_t)?;
                frequency("omega_s", s.omega_s)?;
                coupling("g_tc", s.g_tc)?;
                coupling("g_t-ens", s.g_ens)?;
                levels("cavity", s.cavity_levels)?;
                levels("ensemble", s.ensemble_levels)
            }
        }
    }

    pub fn omega_t(&self) -> T {
        match self {
            Self::Ts(s) => s.omega_t,
            Self::TEns(s) => s.omega_t,
            Self::Sts(s) => s.omega_t,
            Self::CTEns(s) => s.omega_t,
        }
    }

    /// Same system with a different transmon frequency.
    pub fn with_omega_t(&self, omega_t: T) -> Self {
        match *self {
            Self::Ts(s) => Self::Ts(TsSpec { omega_t, ..s }),
            Self::TEns(s) => Self::TEns(TEnsSpec { omega_t, ..s }),
            Self::Sts(s) => Self::Sts(StsSpec { omega_t, ..s }),
            Self::CTEns(s) => Self::CTEns(CTEnsSpec { omega_t, ..s }),
        }
    }

    /// Bosonic truncations grown by `extra` levels.
    pub fn with_extra_levels(&self, extra: usize) -> Self {
        match *self {
            Self::TEns(s) => Self::TEns(TEnsSpec { ensemble_levels: s.ensemble_levels + extra, ..s }),
            Self::CTEns(s) => Self::CTEns(CTEnsSpec {
                cavity_levels: s.cavity_levels + extra,
                ensemble_levels: s.ensemble_levels + extra,
                ..s
            }),
            other => other,
        }
    }

    pub fn pairs(&self) -> Vec<Pair<T>> {
        match self {
            Self::Ts(s) => vec![Pair { partner: SPIN, g: s.g, delta: s.omega_t - s.omega_s, bosonic: false }],
            Self::TEns(s) => vec![Pair { partner: ENSEMBLE, g: s.g, delta: s.omega_t - s.omega_s, bosonic: true }],
            Self::Sts(s) => vec![
                Pair { partner: SPIN1, g: s.g1, delta: s.omega_t - s.omega_s1, bosonic: false },
                Pair { partner: SPIN2, g: s.g2, delta: s.omega_t - s.omega_s2, bosonic: false },
            ],
            Self::CTEns(s) => vec![
                Pair { partner: CAVITY, g: s.g_tc, delta: s.omega_t - s.omega_r, bosonic: true },
                Pair { partner: ENSEMBLE, g: s.g_ens, delta: s.omega_t - s.omega_s, bosonic: true },
            ],
        }
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        match self {
            Self::Ts(_) => HilbertSpace::new([(TRANSMON, 2), (SPIN, 2)]),
            Self::TEns(s) => HilbertSpace::new([(TRANSMON, 2), (ENSEMBLE, s.ensemble_levels)]),
            Self::Sts(_) => HilbertSpace::new([(TRANSMON, 2), (SPIN1, 2), (SPIN2, 2)]),
            Self::CTEns(s) => {
                HilbertSpace::new([(CAVITY, s.cavity_levels), (TRANSMON, 2), (ENSEMBLE, s.ensemble_levels)])
            }
        }
    }

    /// Full Hamiltonian in the rotating-wave approximation.
    pub fn hamiltonian(&self) -> Result<Operator<T>> {
        self.validate()?;
        let ops = Ops::new(self.space()?)?;
        let half = T::lit(0.5);
        let mut h = ops.tau_z.scale_real(self.omega_t() * half);
        match self {
            Self::Ts(s) => h = &h + &ops.spin_z(SPIN)?.scale_real(s.omega_s * half),
            Self::TEns(s) => h = &h + &ops.number(ENSEMBLE)?.scale_real(s.omega_s),
            Self::Sts(s) => {
                h = &h + &ops.spin_z(SPIN1)?.scale_real(s.omega_s1 * half);
                h = &h + &ops.spin_z(SPIN2)?.scale_real(s.omega_s2 * half);
            }
            Self::CTEns(s) => {
                h = &h + &ops.number(CAVITY)?.scale_real(s.omega_r);
                h = &h + &ops.number(ENSEMBLE)?.scale_real(s.omega_s);
            }
        }
        for p in self.pairs() {
            h = &h + &ops.exchange(p.partner, p.g)?;
        }
        Ok(h)
    }

    /// Total excitation number `τ₊τ₋ + Σ partner excitations`.
    pub fn excitation_number(&self) -> Result<Operator<T>> {
        let ops = Ops::new(self.space()?)?;
        let mut n = ops.tau_plus.try_mul(&ops.tau_minus)?;
        for p in self.pairs() {
            n = &n + &ops.number(p.partner)?;
        }
        Ok(n)
    }
}

impl<T: Real> TsSpec<T> {
    /// Adds the counter-rotating terms `g σ₊τ₊ + g* σ₋τ₋` dropped by the
    /// rotating-wave approximation.
    pub fn hamiltonian_with_counter_rotating(&self) -> Result<Operator<T>> {
        let spec = SystemSpec::Ts(*self);
        let ops = Ops::new(spec.space()?)?;
        let sp = ops.lowering(SPIN)?.dagger();
        let term = sp.try_mul(&ops.tau_plus)?.scale(self.g);
        Ok(&(&spec.hamiltonian()? + &term) + &term.dagger())
    }
}

/// Embedded single-factor operators on a coupled-system space.
#[derive(Debug, Clone)]
pub struct Ops<T: Real> {
    pub space: HilbertSpace,
    pub tau_z: Operator<T>,
    pub tau_minus: Operator<T>,
    pub tau_plus: Operator<T>,
    pub identity: Operator<T>,
}

impl<T: Real> Ops<T> {
    pub fn new(space: HilbertSpace) -> Result<Self> {
        let tau_minus = embed(&sigma_minus(), TRANSMON, &space)?;
        Ok(Self {
            tau_z: embed(&sigma_z(), TRANSMON, &space)?,
            tau_plus: tau_minus.dagger(),
            tau_minus,
            identity: Operator::identity(&space),
            space,
        })
    }

    /// `σ₋`, `s` or `a` of factor `label`.
    pub fn lowering(&self, label: &str) -> Result<Operator<T>> {
        embed(&ladder(self.space.factor_dim(label)?)?, label, &self.space)
    }

    pub fn number(&self, label: &str) -> Result<Operator<T>> {
        embed(&number(self.space.factor_dim(label)?)?, label, &self.space)
    }

    pub fn spin_z(&self, label: &str) -> Result<Operator<T>> {
        embed(&sigma_z(), label, &self.space)
    }

    pub fn local_identity(&self, label: &str) -> Result<Operator<T>> {
        embed(&local_identity(self.space.factor_dim(label)?)?, label, &self.space)
    }

    /// `g·p†τ₋ + g*·p τ₊` for partner `p`.
    pub fn exchange(&self, label: &str, g: Complex<T>) -> Result<Operator<T>> {
        let up = self.lowering(label)?.dagger().try_mul(&self.tau_minus)?.scale(g);
        Ok(&up + &up.dagger())
    }

    /// `(g/Δ)·p†τ₋ − (g*/Δ)·p τ₊`, anti-hermitian.
    pub fn generator(&self, label: &str, g: Complex<T>, delta: T) -> Result<Operator<T>> {
        let up = self.lowering(label)?.dagger().try_mul(&self.tau_minus)?.scale(g / delta);
        Ok(&up - &up.dagger())
    }
}

pub fn build_h_ts<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    expect_kind(spec, SystemKind::Ts)?;
    spec.hamiltonian()
}

pub fn build_h_t_ens<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    expect_kind(spec, SystemKind::TEns)?;
    spec.hamiltonian()
}

pub fn build_h_s_t_s<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    expect_kind(spec, SystemKind::Sts)?;
    spec.hamiltonian()
}

pub fn build_h_c_t_ens<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    expect_kind(spec, SystemKind::CTEns)?;
    spec.hamiltonian()
}

pub(crate) fn expect_kind<T: Real>(spec: &SystemSpec<T>, kind: SystemKind) -> Result<()> {
    if spec.kind() == kind {
        Ok(())
    } else {
        Err(Error::KindMismatch { expected: kind.name().into(), found: spec.kind().name().into() })
    }
}
