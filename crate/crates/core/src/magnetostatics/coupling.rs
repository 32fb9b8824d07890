//! Magnetic-dipole coupling of single NV spins to the transmon.

use nalgebra::ComplexField;
use rayon::prelude::*;

use super::biot_savart::Vec3;
use super::geometry::{FieldSource, Geometry};
use crate::constants::{BOHR_MAGNETON, G_FACTOR_NV, HBAR};
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::transmon::TransmonParams;

/// `μ_B g_e / ħ` in rad/(s·T).
pub fn gyromagnetic_ratio<T: Real>() -> T {
    T::lit(BOHR_MAGNETON * G_FACTOR_NV / HBAR)
}

/// NV spin position and its right-handed frame (`z` is the NV axis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSite<T: Real> {
    pub position: Vec3<T>,
    pub axis: Vec3<T>,
    pub ex: Vec3<T>,
    pub ey: Vec3<T>,
}

impl<T: Real> SpinSite<T> {
    /// Site with a deterministic transverse frame: `ex` is the lab axis least
    /// aligned with `axis`, orthogonalized.
    pub fn new(position: Vec3<T>, axis: Vec3<T>) -> Result<Self> {
        if !position.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("spin position is not finite".into()));
        }
        let n = axis.norm();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidParameter("NV axis must be a non-zero finite vector".into()));
        }
        let z = axis / n;
        let k = (0..3).min_by(|&a, &b| z[a].abs().partial_cmp(&z[b].abs()).unwrap()).unwrap();
        let mut helper = Vec3::zeros();
        helper[k] = T::one();
        let ex = (helper - z * z.dot(&helper)).normalize();
        let ey = z.cross(&ex);
        Ok(Self { position, axis: z, ex, ey })
    }

    /// Frame rotated by `alpha` about the NV axis.
    pub fn rotated(&self, alpha: T) -> Self {
        let (s, c) = alpha.sin_cos();
        Self { ex: self.ex * c + self.ey * s, ey: self.ey * c - self.ex * s, ..*self }
    }

    pub fn at(&self, position: Vec3<T>) -> Self {
        Self { position, ..*self }
    }

    /// Largest deviation of the frame from orthonormal right-handed.
    pub fn frame_error(&self) -> T {
        let (x, y, z) = (&self.ex, &self.ey, &self.axis);
        [
            (x.norm() - T::one()).abs(),
            (y.norm() - T::one()).abs(),
            (z.norm() - T::one()).abs(),
            x.dot(y).abs(),
            x.dot(z).abs(),
            y.dot(z).abs(),
            (x.cross(y) - z).norm(),
        ]
        .into_iter()
        .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Dipole coupling of one spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCoupling<T: Real> {
    /// `g_ts = (M_x − iM_y)/(√2 ħ)`, rad/s.
    pub g: Complex<T>,
    /// Longitudinal term `M_z/ħ`, rad/s; not part of `g_ts`.
    pub longitudinal: T,
}

/// Coupling from a precomputed field `B0` at the site.
pub fn coupling_from_field<T: Real>(b0: &Vec3<T>, site: &SpinSite<T>) -> SpinCoupling<T> {
    let gamma = gyromagnetic_ratio::<T>();
    let (mx, my, mz) = (b0.dot(&site.ex) * gamma, b0.dot(&site.ey) * gamma, b0.dot(&site.axis) * gamma);
    let inv = T::one() / T::lit(2.0).sqrt();
    SpinCoupling { g: Complex::new(mx * inv, -my * inv), longitudinal: mz }
}

pub fn single_spin_coupling<T: Real>(
    g: &Geometry<T>,
    params: &TransmonParams<T>,
    site: &SpinSite<T>,
) -> Result<SpinCoupling<T>> {
    let b0 = FieldSource::new(g, params)?.field(&site.position)?;
    Ok(coupling_from_field(&b0, site))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Self::X => 0,
            Self::Y => 1,
            Self::Z => 2,
        }
    }
}

/// Evenly spaced samples `min..=max` (a single sample sits at `min`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range<T: Real> {
    pub min: T,
    pub max: T,
    pub count: usize,
}

impl<T: Real> Range<T> {
    pub fn new(min: T, max: T, count: usize) -> Result<Self> {
        if count == 0 || !min.is_finite() || !max.is_finite() || max < min {
            return Err(Error::InvalidParameter(format!("bad grid range {min}..{max} with {count} samples")));
        }
        Ok(Self { min, max, count })
    }

    pub fn value(&self, i: usize) -> T {
        if self.count == 1 {
            return self.min;
        }
        self.min + (self.max - self.min) * T::from_usize(i).unwrap() / T::from_usize(self.count - 1).unwrap()
    }
}

/// Axis-aligned planar grid. `u` and `v` span the two free axes in x, y, z
/// order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPlane<T: Real> {
    pub fixed: Axis,
    pub fixed_value: T,
    pub u: Range<T>,
    pub v: Range<T>,
}

impl<T: Real> GridPlane<T> {
    pub fn free_axes(&self) -> (usize, usize) {
        match self.fixed {
            Axis::X => (1, 2),
            Axis::Y => (0, 2),
            Axis::Z => (0, 1),
        }
    }

    pub fn len(&self) -> usize {
        self.u.count * self.v.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `k` in row-major order (`u` slowest).
    pub fn point(&self, k: usize) -> Vec3<T> {
        let (a, b) = self.free_axes();
        let mut p = Vec3::zeros();
        p[self.fixed.index()] = self.fixed_value;
        p[a] = self.u.value(k / self.v.count);
        p[b] = self.v.value(k % self.v.count);
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapPoint<T: Real> {
    pub position: Vec3<T>,
    /// `|g_ts|` in rad/s; `None` where the point is too close to the wire.
    pub g_abs: Option<T>,
}

/// `|g_ts|` over a grid, in row-major grid order. Singular points are masked.
pub fn coupling_map<T: Real>(
    g: &Geometry<T>,
    params: &TransmonParams<T>,
    plane: &GridPlane<T>,
    nv_axis: Vec3<T>,
) -> Result<Vec<MapPoint<T>>> {
    let source = FieldSource::new(g, params)?;
    let site = SpinSite::new(Vec3::zeros(), nv_axis)?;
    (0..plane.len())
        .into_par_iter()
        .map(|k| {
            let position = plane.point(k);
            match source.field(&position) {
                Ok(b0) => Ok(MapPoint { position, g_abs: Some(coupling_from_field(&b0, &site.at(position)).g.modulus()) }),
                Err(Error::SingularPoint { .. }) => Ok(MapPoint { position, g_abs: None }),
                Err(e) => Err(e),
            }
        })
        .collect()
}
