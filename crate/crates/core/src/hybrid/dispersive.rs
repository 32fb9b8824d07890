//! Second-order dispersive Hamiltonians and the numerical Schrieffer–Wolff
//! transformation that checks them.

use crate::error::{Error, Result};
use crate::quantum::{exp_antihermitian, Operator};
use crate::scalar::{Complex, Real};

use super::system::{Ops, Pair, SystemKind, SystemSpec, CAVITY, ENSEMBLE, SPIN1, SPIN2};

/// Largest accepted `|g/Δ|`.
pub const DISPERSIVE_LIMIT: f64 = 0.2;
/// `|g/Δ|` above which a warning is attached.
pub const DISPERSIVE_WARNING: f64 = 0.1;

/// Second-order parameters of one transmon–partner pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairShift<T: Real> {
    pub partner: &'static str,
    pub g: Complex<T>,
    pub delta: T,
    /// `|g|²/Δ`, carrying the sign of `Δ`.
    pub chi: T,
}

impl<T: Real> PairShift<T> {
    pub fn ratio(&self) -> T {
        self.g.norm_sqr().sqrt() / self.delta.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveParams<T: Real> {
    pub kind: SystemKind,
    pub pairs: Vec<PairShift<T>>,
    /// `χ` of the t-ens pair (t-ens and c-t-ens).
    pub chi: Option<T>,
    /// Spin–spin exchange on `σ₁⁺σ₂⁻τ_z` (s-t-s).
    pub j: Option<Complex<T>>,
    /// Cavity–ensemble exchange on `a†s τ_z` (c-t-ens).
    pub g_virtual: Option<Complex<T>>,
    /// Shift of the transmon frequency, `Σ χ`.
    pub transmon_shift: T,
    pub warnings: Vec<String>,
}

impl<T: Real> EffectiveParams<T> {
    /// Shift of a partner's frequency with the transmon in `|↓⟩` (`−χ`).
    pub fn partner_shift(&self, partner: &str) -> Option<T> {
        self.pairs.iter().find(|p| p.partner == partner).map(|p| -p.chi)
    }
}

/// `J = g₁g₂*(1/Δ₁ + 1/Δ₂)/2`.
pub fn exchange_coupling<T: Real>(g1: Complex<T>, g2: Complex<T>, delta1: T, delta2: T) -> Complex<T> {
    g1 * g2.conj() * Complex::new((T::one() / delta1 + T::one() / delta2) * T::lit(0.5), T::zero())
}

fn shift<T: Real>(p: &Pair<T>) -> PairShift<T> {
    PairShift { partner: p.partner, g: p.g, delta: p.delta, chi: p.g.norm_sqr() / p.delta }
}

pub fn dispersive_params<T: Real>(spec: &SystemSpec<T>) -> Result<EffectiveParams<T>> {
    spec.validate()?;
    let pairs: Vec<PairShift<T>> = spec.pairs().iter().map(shift).collect();
    let mut warnings = Vec::new();
    for p in &pairs {
        if p.g.norm_sqr() == T::zero() {
            continue;
        }
        let ratio = p.ratio().as_f64();
        if !(ratio <= DISPERSIVE_LIMIT) {
            return Err(Error::NonDispersive { ratio, limit: DISPERSIVE_LIMIT });
        }
        if ratio > DISPERSIVE_WARNING {
            warnings.push(format!(
                "{} pair: |g/Delta| = {ratio:.3} above {DISPERSIVE_WARNING}, fourth-order corrections may matter",
                p.partner
            ));
        }
    }
    let transmon_shift = pairs.iter().fold(T::zero(), |acc, p| acc + p.chi);
    let chi_of = |label: &str| pairs.iter().find(|p| p.partner == label).map(|p| p.chi);
    let cross = || exchange_coupling(pairs[0].g, pairs[1].g, pairs[0].delta, pairs[1].delta);
    let (chi, j, g_virtual) = match spec.kind() {
        SystemKind::Ts => (None, None, None),
        SystemKind::TEns => (chi_of(ENSEMBLE), None, None),
        SystemKind::Sts => (None, Some(cross()), None),
        SystemKind::CTEns => (chi_of(ENSEMBLE), None, Some(cross())),
    };
    Ok(EffectiveParams { kind: spec.kind(), pairs, chi, j, g_virtual, transmon_shift, warnings })
}

/// Dispersive Hamiltonian of any system kind.
///
/// Spins: `½(ω_t + Σχ)τ_z + Σ ½(ω_s − χ)σ_z`, plus `(Jσ₁⁺σ₂⁻ + h.c.)τ_z` for
/// two spins. Bosons: `Σ ω p†p + ½(ω_t + Σ(2χ p†p + χ))τ_z`, plus
/// `(g_virtual a†s + h.c.)τ_z` for the cavity–ensemble system.
pub fn dispersive_hamiltonian<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    let params = dispersive_params(spec)?;
    let ops = Ops::new(spec.space()?)?;
    let half = T::lit(0.5);
    let mut h = ops.tau_z.scale_real((spec.omega_t() + params.transmon_shift) * half);
    for (pair, p) in spec.pairs().iter().zip(&params.pairs) {
        let omega = spec.omega_t() - pair.delta;
        if pair.bosonic {
            let n = ops.number(pair.partner)?;
            h = &h + &n.scale_real(omega);
            h = &h + &n.try_mul(&ops.tau_z)?.scale_real(p.chi);
        } else {
            h = &h + &ops.spin_z(pair.partner)?.scale_real((omega - p.chi) * half);
        }
    }
    let cross = match (params.j, params.g_virtual) {
        (Some(j), _) => Some((SPIN1, SPIN2, j)),
        (_, Some(gv)) => Some((CAVITY, ENSEMBLE, gv)),
        _ => None,
    };
    if let Some((first, second, coupling)) = cross {
        let up = ops.lowering(first)?.dagger().try_mul(&ops.lowering(second)?)?;
        let hop = (&up.scale(coupling) + &up.dagger().scale(coupling.conj())).try_mul(&ops.tau_z)?;
        h = &h + &hop;
    }
    Ok(h)
}

/// Dispersive t-ens Hamiltonian `ω_s s†s + ½(ω_t + 2χ s†s + χ)τ_z`.
pub fn build_dispersive_h_t_ens<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    super::system::expect_kind(spec, SystemKind::TEns)?;
    dispersive_hamiltonian(spec)
}

/// Scalar dropped by the dispersive forms: `χ/2` per bosonic pair. The
/// second-order transformation of `g(p†τ₋ + pτ₊)` yields
/// `χ(p†p τ_z + ½τ_z + ½)`; only the identity part is omitted.
pub fn scalar_offset<T: Real>(spec: &SystemSpec<T>) -> T {
    spec.pairs()
        .iter()
        .filter(|p| p.bosonic)
        .fold(T::zero(), |acc, p| acc + p.g.norm_sqr() / p.delta * T::lit(0.5))
}

/// Anti-hermitian generator `Σ (g/Δ)(p†τ₋) − h.c.`.
pub fn sw_generator<T: Real>(spec: &SystemSpec<T>) -> Result<Operator<T>> {
    let ops = Ops::new(spec.space()?)?;
    let mut c = Operator::zeros(&ops.space);
    for p in spec.pairs() {
        c = &c + &ops.generator(p.partner, p.g, p.delta)?;
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct SwResult<T: Real> {
    /// `U H U†` with `U = exp(−C)`.
    pub transformed: Operator<T>,
    /// Dispersive Hamiltonian plus [`scalar_offset`].
    pub analytic: Operator<T>,
    /// Max-entry residual over the compared subspace.
    pub residual: T,
    /// Max-entry norm of `H`.
    pub h_norm: T,
    /// Highest total excitation number compared (`None`: whole space).
    pub max_excitations: Option<usize>,
}

impl<T: Real> SwResult<T> {
    pub fn relative_residual(&self) -> T {
        self.residual / self.h_norm
    }
}

/// Numerical Schrieffer–Wolff check. Spin systems are compared on the whole
/// space; bosonic systems on the zero- and one-excitation sectors, which are
/// untouched by the Fock truncation.
pub fn sw_transform<T: Real>(spec: &SystemSpec<T>) -> Result<SwResult<T>> {
    let bosonic = spec.pairs().iter().any(|p| p.bosonic);
    sw_transform_within(spec, if bosonic { Some(1) } else { None })
}

/// As [`sw_transform`], comparing only basis states with at most
/// `max_excitations` total excitations.
pub fn sw_transform_within<T: Real>(spec: &SystemSpec<T>, max_excitations: Option<usize>) -> Result<SwResult<T>> {
    let analytic_bare = dispersive_hamiltonian(spec)?;
    let h = spec.hamiltonian()?;
    let c = sw_generator(spec)?;
    let u = exp_antihermitian(&c.scale_real(-T::one()))?;
    let transformed = Operator::new(h.space().clone(), &u * h.matrix() * u.adjoint())?;
    let analytic = &analytic_bare + &Operator::identity(h.space()).scale_real(scalar_offset(spec));
    let excitations = spec.excitation_number()?.diagonal_real();
    let cap = max_excitations.map(|m| T::from_usize(m).unwrap() + T::lit(0.5));
    let residual =
        transformed.max_distance_on(&analytic, |i| cap.map_or(true, |c| excitations[i] < c))?;
    Ok(SwResult { h_norm: h.max_abs(), transformed, analytic, residual, max_excitations })
}
