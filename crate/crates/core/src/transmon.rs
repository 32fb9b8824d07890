//! Transmon physics in the number basis of the plasma oscillator.
//!
//! Energies are angular frequencies (ħ = 1). The offset charge is gauged away
//! and never appears.

use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::quantum::{ladder, number, HilbertSpace, Operator};
use crate::scalar::Real;

/// Smallest `E_J/E_C` accepted as the transmon regime.
pub const MIN_RATIO: f64 = 20.0;
/// The quartic term couples `|n⟩` to `|n±4⟩`, so fewer levels are meaningless.
pub const MIN_LEVELS: usize = 6;
/// Factor label used for the multi-level transmon.
pub const TRANSMON_LABEL: &str = "transmon";

fn check_ratio<T: Real>(ratio: T) -> Result<()> {
    if !(ratio >= T::lit(MIN_RATIO)) {
        return Err(Error::BelowTransmonRegime { ratio: ratio.as_f64(), min: MIN_RATIO });
    }
    Ok(())
}

fn check_positive<T: Real>(name: &str, v: T) -> Result<()> {
    if !(v > T::zero()) || !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// Single-junction transmon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleJJParams<T: Real> {
    /// Josephson energy (rad/s).
    pub ej: T,
    /// Charging energy (rad/s).
    pub ec: T,
    /// Critical current (A).
    pub ic: T,
    /// Number-basis truncation.
    pub n_levels: usize,
}

impl<T: Real> SingleJJParams<T> {
    pub fn new(ej: T, ec: T, ic: T, n_levels: usize) -> Result<Self> {
        check_positive("E_J", ej)?;
        check_positive("E_C", ec)?;
        check_positive("I_c", ic)?;
        check_ratio(ej / ec)?;
        if n_levels < MIN_LEVELS {
            return Err(Error::InvalidParameter(format!(
                "transmon truncation {n_levels} < {MIN_LEVELS}: the quartic term couples |n> to |n±4>"
            )));
        }
        Ok(Self { ej, ec, ic, n_levels })
    }

    pub fn from_ratio(ratio: T, ec: T, ic: T, n_levels: usize) -> Result<Self> {
        Self::new(ratio * ec, ec, ic, n_levels)
    }

    pub fn ratio(&self) -> T {
        self.ej / self.ec
    }
}

/// SQUID (double-junction) transmon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleJJParams<T: Real> {
    pub ej1: T,
    pub ej2: T,
    pub ic1: T,
    pub ic2: T,
    /// External flux in units of the flux quantum.
    pub flux: T,
    pub ec: T,
    pub n_levels: usize,
}

impl<T: Real> DoubleJJParams<T> {
    pub fn new(ej1: T, ej2: T, ic1: T, ic2: T, flux: T, ec: T, n_levels: usize) -> Result<Self> {
        check_positive("E_J1", ej1)?;
        check_positive("E_J2", ej2)?;
        check_positive("I_c1", ic1)?;
        check_positive("I_c2", ic2)?;
        check_positive("E_C", ec)?;
        if !flux.is_finite() {
            return Err(Error::InvalidParameter(format!("flux must be finite, got {flux}")));
        }
        if n_levels < MIN_LEVELS {
            return Err(Error::InvalidParameter(format!("transmon truncation {n_levels} < {MIN_LEVELS}")));
        }
        Ok(Self { ej1, ej2, ic1, ic2, flux, ec, n_levels })
    }

    /// `d = (E_J2 − E_J1)/(E_J1 + E_J2)`.
    pub fn asymmetry(&self) -> T {
        (self.ej2 - self.ej1) / (self.ej1 + self.ej2)
    }

    /// Amplitude of the flux-tuned Josephson potential,
    /// `(E_J1+E_J2)·√(cos²(πϕ/ϕ0) + d² sin²(πϕ/ϕ0))`.
    pub fn effective_josephson_energy(&self) -> T {
        let (s, c) = (T::pi() * self.flux).sin_cos();
        let d = self.asymmetry();
        (self.ej1 + self.ej2) * (c * c + d * d * s * s).sqrt()
    }

    /// Equivalent single junction at the current flux.
    pub fn equivalent_single(&self) -> Result<SingleJJParams<T>> {
        SingleJJParams::new(self.effective_josephson_energy(), self.ec, self.ic1 + self.ic2, self.n_levels)
    }
}

/// Either junction layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransmonParams<T: Real> {
    Single(SingleJJParams<T>),
    Double(DoubleJJParams<T>),
}

impl<T: Real> TransmonParams<T> {
    /// Single-junction equivalent at the operating point.
    pub fn effective(&self) -> Result<SingleJJParams<T>> {
        match self {
            Self::Single(p) => Ok(*p),
            Self::Double(p) => p.equivalent_single(),
        }
    }

    /// Current per unit `τ_x` through the first (or only) junction, in amperes.
    pub fn reference_current(&self) -> Result<T> {
        let zpf = phase_zpf(&self.effective()?);
        Ok(match self {
            Self::Single(p) => p.ic * zpf,
            Self::Double(p) => p.ic1 * zpf * coupling_flux_factor(p),
        })
    }
}

impl<T: Real> From<SingleJJParams<T>> for TransmonParams<T> {
    fn from(p: SingleJJParams<T>) -> Self {
        Self::Single(p)
    }
}

impl<T: Real> From<DoubleJJParams<T>> for TransmonParams<T> {
    fn from(p: DoubleJJParams<T>) -> Self {
        Self::Double(p)
    }
}

/// `ω_p = √(8 E_J E_C)`.
pub fn plasma_frequency<T: Real>(p: &SingleJJParams<T>) -> T {
    (T::lit(8.0) * p.ej * p.ec).sqrt()
}

/// Zero-point phase amplitude `(1/√2)(8E_C/E_J)^{1/4}`.
pub fn phase_zpf<T: Real>(p: &SingleJJParams<T>) -> T {
    (T::lit(8.0) * p.ec / p.ej).powf(T::lit(0.25)) / T::lit(2.0).sqrt()
}

/// Coefficient of the neglected cubic term of `sin φ`, `φ_zpf³/6`.
pub fn cubic_coefficient<T: Real>(p: &SingleJJParams<T>) -> T {
    phase_zpf(p).powi(3) / T::lit(6.0)
}

/// `ω_p(b†b + ½) − (E_C/12)(b + b†)⁴` on the truncated number basis.
pub fn build_transmon_hamiltonian<T: Real>(p: &SingleJJParams<T>) -> Result<Operator<T>> {
    if p.n_levels < MIN_LEVELS {
        return Err(Error::InvalidParameter(format!("transmon truncation {} < {MIN_LEVELS}", p.n_levels)));
    }
    let n = p.n_levels;
    // (b+b†)^4 is formed on n+4 levels and cut back to n, so every kept
    // matrix element equals its untruncated value.
    let big = n + 4;
    let b = ladder::<T>(big)?;
    let x = &b + &b.dagger();
    let x2 = &x * &x;
    let x4 = &x2 * &x2;
    let space = HilbertSpace::single(TRANSMON_LABEL, n)?;
    let wp = plasma_frequency(p);
    let quartic = p.ec / T::lit(12.0);
    let num = number::<T>(n)?;
    let half = T::lit(0.5);
    Ok(Operator::from_fn(&space, |i, j| {
        let mut v = -x4.get(i, j) * crate::scalar::cplx(quartic);
        if i == j {
            v += crate::scalar::cplx(wp * (num.get(i, i).re + half));
        }
        v
    }))
}

/// Low-lying spectrum from exact diagonalization.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmonSpectrum<T: Real> {
    /// Energy of the eigenstate continuously connected to `|0⟩`.
    pub ground: T,
    /// Energy of the eigenstate connected to `|1⟩`.
    pub first: T,
    /// Energy of the eigenstate connected to `|2⟩`.
    pub second: T,
    /// Overlap of the exact ground state (restricted to `|0⟩..|5⟩`) with the
    /// perturbative `|↓⟩`.
    pub ground_overlap: T,
    /// Same for the first excited state and `|↑⟩`.
    pub excited_overlap: T,
}

impl<T: Real> TransmonSpectrum<T> {
    pub fn qubit_frequency(&self) -> T {
        self.first - self.ground
    }

    /// `(E₂ − E₁) − (E₁ − E₀)`.
    pub fn anharmonicity(&self) -> T {
        (self.second - self.first) - (self.first - self.ground)
    }
}

/// Exact diagonalization of [`build_transmon_hamiltonian`].
///
/// Levels are identified by their dominant number state, which stays robust
/// when very deep truncations produce spurious states of the unbounded
/// quartic expansion.
pub fn spectrum<T: Real>(p: &SingleJJParams<T>) -> Result<TransmonSpectrum<T>> {
    let h = build_transmon_hamiltonian(p)?;
    let eig = h.eigh()?;
    let pick = |k: usize| {
        let mut best = (0usize, T::zero());
        for col in 0..eig.values.len() {
            let w = eig.vectors[(k, col)].modulus_squared();
            if w > best.1 {
                best = (col, w);
            }
        }
        best.0
    };
    let (c0, c1, c2) = (pick(0), pick(1), pick(2));
    let pert = perturbed_states(p.ratio())?;
    let overlap = |col: usize, idx: [usize; 3], coeffs: [T; 3]| {
        let mut acc = crate::scalar::cplx(T::zero());
        for (i, c) in idx.iter().zip(coeffs) {
            acc += eig.vectors[(*i, col)] * c;
        }
        acc.modulus()
    };
    Ok(TransmonSpectrum {
        ground: eig.values[c0],
        first: eig.values[c1],
        second: eig.values[c2],
        ground_overlap: overlap(c0, [0, 2, 4], pert.down),
        excited_overlap: overlap(c1, [1, 3, 5], pert.up),
    })
}

/// First-order perturbed qubit states, renormalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedQubit<T: Real> {
    /// Amplitudes of `|↓⟩` on `|0⟩, |2⟩, |4⟩`.
    pub down: [T; 3],
    /// Amplitudes of `|↑⟩` on `|1⟩, |3⟩, |5⟩`.
    pub up: [T; 3],
    /// `⟨↓|(b + b†)|↑⟩`.
    pub x_element: T,
}

/// Unnormalized first-order admixtures `(c₂, c₄, c₃, c₅)`.
///
/// `c₂ = −(6√2/24)ε`, `c₄ = −(√24/48)ε`, `c₃ = −(10√6/24)ε`,
/// `c₅ = −(√120/48)ε` with `ε = √(E_C/8E_J)`.
pub fn first_order_coefficients<T: Real>(ratio: T) -> Result<[T; 4]> {
    check_ratio(ratio)?;
    let eps = (T::one() / (T::lit(8.0) * ratio)).sqrt();
    let c2 = -(T::lit(6.0) * T::lit(2.0).sqrt() / T::lit(24.0)) * eps;
    let c4 = -(T::lit(24.0).sqrt() / T::lit(48.0)) * eps;
    let c3 = -(T::lit(10.0) * T::lit(6.0).sqrt() / T::lit(24.0)) * eps;
    let c5 = -(T::lit(120.0).sqrt() / T::lit(48.0)) * eps;
    Ok([c2, c4, c3, c5])
}

pub fn perturbed_states<T: Real>(ratio: T) -> Result<PerturbedQubit<T>> {
    let [c2, c4, c3, c5] = first_order_coefficients(ratio)?;
    let nd = (T::one() + c2 * c2 + c4 * c4).sqrt();
    let nu = (T::one() + c3 * c3 + c5 * c5).sqrt();
    let down = [T::one() / nd, c2 / nd, c4 / nd];
    let up = [T::one() / nu, c3 / nu, c5 / nu];

    let b = ladder::<T>(6)?;
    let x = &b + &b.dagger();
    let mut elem = T::zero();
    for (i, &cd) in [0usize, 2, 4].iter().zip(&down) {
        for (j, &cu) in [1usize, 3, 5].iter().zip(&up) {
            elem += cd * cu * x.get(*i, *j).re;
        }
    }
    Ok(PerturbedQubit { down, up, x_element: elem })
}

/// Relative error of replacing `b + b†` by `τ_x` in the qubit subspace.
pub fn substitution_error<T: Real>(ratio: T) -> Result<T> {
    Ok((perturbed_states(ratio)?.x_element - T::one()).abs())
}

/// Junction currents `(I₁, I₂)` in amperes with the phase expanded to first
/// order around `φ_value`.
pub fn junction_currents<T: Real>(p: &DoubleJJParams<T>, phi_value: T) -> (T, T) {
    let (s, c) = (T::pi() * p.flux).sin_cos();
    let i1 = p.ic1 * s + phi_value * p.ic1 * c;
    let i2 = -p.ic2 * s + phi_value * p.ic2 * c;
    (i1, i2)
}

/// `cos(πϕ/ϕ0)`: the factor multiplying the coupling-relevant current.
/// Its sign at odd integer flux is reported, not folded away.
pub fn coupling_flux_factor<T: Real>(p: &DoubleJJParams<T>) -> T {
    (T::pi() * p.flux).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EC: f64 = 2.0 * PI * 92e6;

    fn params(ratio: f64, n: usize) -> SingleJJParams<f64> {
        SingleJJParams::from_ratio(ratio, EC, 500e-9, n).unwrap()
    }

    #[test]
    fn plasma_frequency_examples() {
        let p = params(100.0, 10);
        let expected = 2.0 * PI * 800f64.sqrt() * 92e6;
        assert!((plasma_frequency(&p) - expected).abs() / expected < 1e-14);
        assert!((plasma_frequency(&p) / (2.0 * PI) - 2.6022e9).abs() < 1e5);
        let mut q = p;
        q.ej *= 4.0;
        assert!((plasma_frequency(&q) / plasma_frequency(&p) - 2.0).abs() < 1e-14);
        q.ec *= 4.0;
        assert!((plasma_frequency(&q) / plasma_frequency(&p) - 4.0).abs() < 1e-14);
        // E_J = E_C is outside the transmon regime; check the formula directly.
        let raw = SingleJJParams { ej: 3.0, ec: 3.0, ic: 1.0, n_levels: 6 };
        assert!((plasma_frequency(&raw) - 2.0 * 2f64.sqrt() * 3.0).abs() < 1e-14);
    }

    #[test]
    fn phase_zpf_examples() {
        let p = params(100.0, 10);
        assert!((phase_zpf(&p) - 0.376).abs() < 1e-3);
        assert!((cubic_coefficient(&p) - 0.009).abs() < 1e-3);
        let raw = SingleJJParams { ej: 8.0, ec: 1.0, ic: 1.0, n_levels: 6 };
        assert!((phase_zpf(&raw) - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SingleJJParams::from_ratio(8.0, EC, 1e-7, 10),
            Err(Error::BelowTransmonRegime { .. })
        ));
        assert!(SingleJJParams::from_ratio(100.0, EC, 1e-7, 5).is_err());
        assert!(SingleJJParams::from_ratio(100.0, -EC, 1e-7, 10).is_err());
        assert!(perturbed_states(19.0).is_err());
        assert!(substitution_error(10.0).is_err());
    }

    #[test]
    fn harmonic_limit_gaps() {
        let p = SingleJJParams { ej: 1.0e10, ec: 1e-30, ic: 1.0, n_levels: 12 };
        let h = build_transmon_hamiltonian(&p).unwrap();
        let e = h.eigenvalues().unwrap();
        let wp = plasma_frequency(&p);
        for k in 1..6 {
            assert!(((e[k] - e[k - 1]) - wp).abs() / wp < 1e-12);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_and_rejects_small_truncation() {
        let h = build_transmon_hamiltonian(&params(100.0, 12)).unwrap();
        assert!(h.is_hermitian());
        let bad = SingleJJParams { ej: 100.0, ec: 1.0, ic: 1.0, n_levels: 4 };
        assert!(build_transmon_hamiltonian(&bad).is_err());
    }

    #[test]
    fn qubit_gap_sits_about_ec_below_plasma() {
        let s = spectrum(&params(100.0, 30)).unwrap();
        let wp = plasma_frequency(&params(100.0, 30));
        assert!(s.qubit_frequency() < wp);
        assert!(((wp - s.qubit_frequency()) - EC).abs() / EC < 0.1);
        assert!(s.anharmonicity() < 0.0);
    }

    /// Rayleigh–Schrödinger energies to second order in the quartic term.
    fn second_order_levels(wp: f64, ec: f64, count: usize) -> Vec<f64> {
        let n = count + 8;
        let b = ladder::<f64>(n + 4).unwrap();
        let x = &b + &b.dagger();
        let x2 = &x * &x;
        let x4 = &x2 * &x2;
        let v = |i: usize, j: usize| -ec / 12.0 * x4.get(i, j).re;
        (0..count)
            .map(|k| {
                let mut e = wp * (k as f64 + 0.5) + v(k, k);
                for m in k.saturating_sub(4)..=k + 4 {
                    if m != k {
                        e += v(m, k).powi(2) / (wp * (k as f64 - m as f64));
                    }
                }
                e
            })
            .collect()
    }

    #[test]
    fn anharmonicity_matches_second_order_perturbation() {
        // Third-order terms are O(E_C/ω_p) relative, about 4% at ratio 100.
        for (ratio, tol) in [(100.0, 0.06), (1000.0, 0.015)] {
            let p = params(ratio, 30);
            let s = spectrum(&p).unwrap();
            let e = second_order_levels(plasma_frequency(&p), EC, 3);
            let pert = (e[2] - e[1]) - (e[1] - e[0]);
            assert!((s.anharmonicity() - pert).abs() / pert.abs() < tol, "{} vs {}", s.anharmonicity(), pert);
            assert!(((s.qubit_frequency() - (e[1] - e[0])) / s.qubit_frequency()).abs() < 1e-3);
        }
    }

    #[test]
    fn low_levels_converge_in_truncation() {
        let a = spectrum(&params(100.0, 20)).unwrap();
        let b = spectrum(&params(100.0, 30)).unwrap();
        assert!(((a.ground - b.ground) / b.ground).abs() < 1e-6);
        assert!(((a.first - b.first) / b.first).abs() < 1e-6);
    }

    #[test]
    fn perturbed_states_reproduce_tabulated_values() {
        let q = perturbed_states(100.0).unwrap();
        let down = [0.9999, -0.0125, -0.0036];
        let up = [0.9993, -0.0361, -0.0080];
        for k in 0..3 {
            assert!((q.down[k] - down[k]).abs() < 5e-4, "down[{k}] = {}", q.down[k]);
            assert!((q.up[k] - up[k]).abs() < 5e-4, "up[{k}] = {}", q.up[k]);
        }
        assert!((q.x_element - 0.983).abs() < 1e-3);
        let n_down: f64 = q.down.iter().map(|c| c * c).sum();
        let n_up: f64 = q.up.iter().map(|c| c * c).sum();
        assert!((n_down - 1.0).abs() < 1e-12 && (n_up - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_radicals() {
        // Hand-simplified radicals: 6√2/24 = √2/4, √24/48 = √6/24,
        // 10√6/24 = 5√6/12, √120/48 = √30/24.
        let ratio = 100.0;
        let eps = (1.0 / (8.0 * ratio) as f64).sqrt();
        let [c2, c4, c3, c5] = first_order_coefficients(ratio).unwrap();
        assert!((c2 + 2f64.sqrt() / 4.0 * eps).abs() < 1e-12);
        assert!((c4 + 6f64.sqrt() / 24.0 * eps).abs() < 1e-12);
        assert!((c3 + 5.0 * 6f64.sqrt() / 12.0 * eps).abs() < 1e-12);
        assert!((c5 + 30f64.sqrt() / 24.0 * eps).abs() < 1e-12);
    }

    #[test]
    fn substitution_error_examples() {
        let e100 = substitution_error(100.0).unwrap();
        assert!((e100 - 0.017).abs() < 1e-3);
        let e400 = substitution_error(400.0).unwrap();
        assert!((e400 / e100 - 0.5).abs() < 0.05, "ratio {}", e400 / e100);
        let mut prev = f64::INFINITY;
        let mut r = 20.0;
        while r <= 1e4 {
            let e = substitution_error(r).unwrap();
            assert!(e < prev);
            prev = e;
            r *= 1.25;
        }
        let big = perturbed_states(1e12).unwrap();
        assert!(big.down[1].abs() < 1e-6 && big.up[2].abs() < 1e-6);
        assert!((big.x_element - 1.0).abs() < 1e-5);
    }

    #[test]
    fn junction_current_examples() {
        let p = DoubleJJParams::new(1e11, 1e11, 3e-7, 5e-7, 0.0, EC, 10).unwrap();
        let (i1, i2) = junction_currents(&p, 1.0);
        assert!((i1 - 3e-7).abs() < 1e-20 && (i2 - 5e-7).abs() < 1e-20);
        let half = DoubleJJParams { flux: 0.5, ..p };
        let (i1, i2) = junction_currents(&half, 0.0);
        assert!((i1 - 3e-7).abs() < 1e-20 && (i2 + 5e-7).abs() < 1e-20);
        // coupling factor is maximal with zero slope at integer flux
        let f = |x: f64| coupling_flux_factor(&DoubleJJParams { flux: x, ..p });
        assert_eq!(f(0.0), 1.0);
        assert!(((f(1e-4) - f(-1e-4)) / 2e-4).abs() < 1e-10);
        assert!(f(0.1) < f(0.0));
        assert_eq!(p.asymmetry(), 0.0);
    }
}
