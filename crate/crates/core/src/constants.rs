//! Physical constants (SI).

use std::f64::consts::PI;

/// Vacuum permeability, T m / A.
pub const MU0: f64 = 4.0 * PI * 1e-7;
/// mu0 / 4 pi.
pub const MU0_OVER_4PI: f64 = 1e-7;
/// Bohr magneton, J / T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
/// NV-center electron g-factor.
pub const G_FACTOR_NV: f64 = 2.0028;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Converts a cyclic frequency in Hz to angular frequency in rad/s.
pub fn hz_to_angular(hz: f64) -> f64 {
    2.0 * PI * hz
}

/// Converts an angular frequency in rad/s to cyclic Hz.
pub fn angular_to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}
