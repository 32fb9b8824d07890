//! Low-lying spectra labelled by their dominant bare product state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{Eigen, HilbertSpace, Operator};
use crate::scalar::Real;

use super::dispersive::dispersive_hamiltonian;
use super::system::{SystemSpec, TRANSMON};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelledLevel {
    /// Bare levels per factor, in space order.
    pub levels: Vec<usize>,
    pub label: String,
    pub excitations: usize,
    /// Eigenvalue in rad/s.
    pub energy: f64,
    /// Population of the bare state in the eigenvector.
    pub weight: f64,
}

pub fn bare_label(space: &HilbertSpace, levels: &[usize]) -> String {
    let parts: Vec<String> =
        space.factors().iter().zip(levels).map(|(f, l)| format!("{}={l}", f.label)).collect();
    parts.join(" ")
}

fn levels_up_to<T: Real>(spec: &SystemSpec<T>, eig: &Eigen<T>, max_excitations: usize) -> Result<Vec<LabelledLevel>> {
    let space = spec.space()?;
    let excitations = spec.excitation_number()?.diagonal_real();
    let mut out = Vec::new();
    for (i, n) in excitations.iter().enumerate() {
        let n = n.as_f64().round() as usize;
        if n > max_excitations {
            continue;
        }
        let (energy, weight) = eig.energy_of_basis_state(i);
        let levels = space.digits(i);
        out.push(LabelledLevel {
            label: bare_label(&space, &levels),
            levels,
            excitations: n,
            energy: energy.as_f64(),
            weight: weight.as_f64(),
        });
    }
    Ok(out)
}

/// Exact eigenvalues of the full Hamiltonian for every bare state with at
/// most `max_excitations` excitations.
pub fn labelled_spectrum<T: Real>(spec: &SystemSpec<T>, max_excitations: usize) -> Result<Vec<LabelledLevel>> {
    levels_up_to(spec, &spec.hamiltonian()?.eigh()?, max_excitations)
}

/// As [`labelled_spectrum`] for the dispersive Hamiltonian.
pub fn labelled_dispersive_spectrum<T: Real>(
    spec: &SystemSpec<T>,
    max_excitations: usize,
) -> Result<Vec<LabelledLevel>> {
    levels_up_to(spec, &dispersive_hamiltonian(spec)?.eigh()?, max_excitations)
}

fn energy_of(levels: &[LabelledLevel], wanted: &[usize]) -> Result<f64> {
    levels
        .iter()
        .find(|l| l.levels == wanted)
        .map(|l| l.energy)
        .ok_or_else(|| Error::InvalidParameter(format!("bare state {wanted:?} outside the computed sector")))
}

/// Exact transmon transition frequency with every other factor held at the
/// given bare levels (transmon entry ignored).
pub fn transmon_transition<T: Real>(spec: &SystemSpec<T>, others: &[usize]) -> Result<f64> {
    let space = spec.space()?;
    let t = space.position(TRANSMON)?;
    let mut down = others.to_vec();
    down[t] = 0;
    let mut up = down.clone();
    up[t] = 1;
    let total: usize = up.iter().sum();
    let levels = labelled_spectrum(spec, total)?;
    Ok(energy_of(&levels, &up)? - energy_of(&levels, &down)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub label: String,
    pub excitations: usize,
    /// Ground-relative exact energy.
    pub exact: f64,
    /// Ground-relative dispersive energy.
    pub dispersive: f64,
    pub weight: f64,
}

/// Exact and dispersive energies, both measured from their ground state, for
/// bare states with at most `max_excitations` excitations.
pub fn compare_spectra<T: Real>(spec: &SystemSpec<T>, max_excitations: usize) -> Result<Vec<SpectrumRow>> {
    let exact = labelled_spectrum(spec, max_excitations)?;
    let disp = labelled_dispersive_spectrum(spec, max_excitations)?;
    let e0 = exact.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    let d0 = disp.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    exact
        .iter()
        .map(|l| {
            Ok(SpectrumRow {
                label: l.label.clone(),
                excitations: l.excitations,
                exact: l.energy - e0,
                dispersive: energy_of(&disp, &l.levels)? - d0,
                weight: l.weight,
            })
        })
        .collect()
}

/// Largest relative change of the labelled zero- and one-excitation energies
/// when every bosonic truncation grows by two levels.
pub fn truncation_stability<T: Real>(spec: &SystemSpec<T>) -> Result<f64> {
    let base = labelled_spectrum(spec, 1)?;
    let grown = labelled_spectrum(&spec.with_extra_levels(2), 1)?;
    let scale = base.iter().map(|l| l.energy.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for l in &base {
        let other = grown
            .iter()
            .find(|g| g.label == l.label)
            .ok_or_else(|| Error::InvalidParameter(format!("state {} missing after growth", l.label)))?;
        worst = worst.max((l.energy - other.energy).abs() / scale);
    }
    Ok(worst)
}

/// `⟨ψ|H|ψ⟩` helper for bare product states.
pub fn bare_energy<T: Real>(h: &Operator<T>, levels: &[usize]) -> Result<T> {
    let i = h.space().index(levels)?;
    Ok(h.get(i, i).re)
}
