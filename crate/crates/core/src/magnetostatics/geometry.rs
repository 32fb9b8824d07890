//! Thin-wire current paths of the two transmon layouts.
//!
//! Lab frame: the transmon lies in the `z = 0` plane and its top surface is
//! at `z = h/2`. Single junction: a straight wire from `(−L, 0, 0)` to
//! `(L, 0, 0)` with the junction at the origin. Double junction: a rectangle
//! `x ∈ [−L/4, L/4]`, `y ∈ [−L/2, L/2]` with junctions at `(0, ±L/2, 0)`.
//! The plasma current enters at `(−L/4, 0, 0)`, splits into the `+y` arm
//! (junction 1) and the `−y` arm (junction 2), crosses both junctions along
//! `+x` and recombines at `(L/4, 0, 0)`.

use super::biot_savart::{path_field, Vec3, WireSegment};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::transmon::TransmonParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    SingleJJ,
    DoubleJJ,
}

impl GeometryKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SingleJJ => "single-JJ",
            Self::DoubleJJ => "double-JJ",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Geometry<T: Real> {
    pub segments: Vec<WireSegment<T>>,
    /// Critical current of junction 1 (or the only junction), amperes.
    pub ic: T,
    pub kind: GeometryKind,
    /// Junction separation (double) or wire half-length (single), meters.
    pub l: T,
    /// Junction cross-section height, meters.
    pub h: T,
}

fn positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

fn p3<T: Real>(x: T, y: T) -> Vec3<T> {
    Vec3::new(x, y, T::zero())
}

impl<T: Real> Geometry<T> {
    pub fn single_jj(l: T, h: T, ic: T) -> Result<Self> {
        positive("L", l)?;
        positive("h", h)?;
        positive("I_c", ic)?;
        let seg = WireSegment::new(p3(-l, T::zero()), p3(l, T::zero()), T::one())?;
        Ok(Self { segments: vec![seg], ic, kind: GeometryKind::SingleJJ, l, h })
    }

    pub fn double_jj(l: T, h: T, ic1: T, ic2: T) -> Result<Self> {
        positive("L", l)?;
        positive("h", h)?;
        positive("I_c1", ic1)?;
        positive("I_c2", ic2)?;
        let (qx, hy, z) = (l / T::lit(4.0), l / T::lit(2.0), T::zero());
        let arm = |sign: T, frac: T| -> Result<Vec<WireSegment<T>>> {
            let pts = [p3(-qx, z), p3(-qx, sign * hy), p3(qx, sign * hy), p3(qx, z)];
            pts.windows(2).map(|w| WireSegment::new(w[0], w[1], frac)).collect()
        };
        let mut segments = arm(T::one(), T::one())?;
        segments.extend(arm(-T::one(), ic2 / ic1)?);
        Ok(Self { segments, ic: ic1, kind: GeometryKind::DoubleJJ, l, h })
    }

    /// Junction positions in the lab frame.
    pub fn junctions(&self) -> Vec<Vec3<T>> {
        match self.kind {
            GeometryKind::SingleJJ => vec![Vec3::zeros()],
            GeometryKind::DoubleJJ => {
                let hy = self.l / T::lit(2.0);
                vec![p3(T::zero(), hy), p3(T::zero(), -hy)]
            }
        }
    }

    /// Height of the transmon top surface.
    pub fn top_surface(&self) -> T {
        self.h / T::lit(2.0)
    }

    /// Same path with every segment traversed backwards.
    pub fn reversed(&self) -> Self {
        Self { segments: self.segments.iter().map(|s| s.reversed()).collect(), ..self.clone() }
    }

    fn check_params(&self, params: &TransmonParams<T>) -> Result<()> {
        let (kind, ic) = match params {
            TransmonParams::Single(p) => (GeometryKind::SingleJJ, p.ic),
            TransmonParams::Double(p) => (GeometryKind::DoubleJJ, p.ic1),
        };
        if kind != self.kind {
            return Err(Error::KindMismatch { expected: self.kind.name().into(), found: kind.name().into() });
        }
        if ((ic - self.ic) / self.ic).abs() > T::lit(1e-12) {
            return Err(Error::InvalidParameter(format!(
                "geometry I_c {} disagrees with transmon I_c {ic}",
                self.ic
            )));
        }
        Ok(())
    }
}

/// Transmon field per unit `τ_x`, `B0` in tesla.
pub fn transmon_field<T: Real>(g: &Geometry<T>, params: &TransmonParams<T>, point: &Vec3<T>) -> Result<Vec3<T>> {
    FieldSource::new(g, params)?.field(point)
}

/// Evaluates the field at many points once the reference current is known.
#[derive(Debug, Clone)]
pub struct FieldSource<T: Real> {
    segments: Vec<WireSegment<T>>,
    current: T,
}

impl<T: Real> FieldSource<T> {
    pub fn new(g: &Geometry<T>, params: &TransmonParams<T>) -> Result<Self> {
        g.check_params(params)?;
        Ok(Self { segments: g.segments.clone(), current: params.reference_current()? })
    }

    pub fn current(&self) -> T {
        self.current
    }

    pub fn field(&self, point: &Vec3<T>) -> Result<Vec3<T>> {
        path_field(&self.segments, self.current, point)
    }

    pub fn segments(&self) -> &[WireSegment<T>] {
        &self.segments
    }
}
