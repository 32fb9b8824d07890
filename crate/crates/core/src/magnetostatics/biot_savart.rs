//! Closed-form field of a straight current segment.

use nalgebra::Vector3;

use crate::constants::MU0_OVER_4PI;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub type Vec3<T> = Vector3<T>;

/// Points closer than this to a segment are rejected (meters).
pub const SINGULAR_DISTANCE: f64 = 1e-9;

/// Straight piece of the current path. Current flows from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireSegment<T: Real> {
    pub start: Vec3<T>,
    pub end: Vec3<T>,
    /// Multiplier of the reference current amplitude.
    pub current_fraction: T,
}

impl<T: Real> WireSegment<T> {
    pub fn new(start: Vec3<T>, end: Vec3<T>, current_fraction: T) -> Result<Self> {
        let finite = start.iter().chain(end.iter()).all(|v| v.is_finite()) && current_fraction.is_finite();
        if !finite {
            return Err(Error::InvalidParameter("wire segment has non-finite coordinates".into()));
        }
        if start == end {
            return Err(Error::InvalidParameter("wire segment has zero length".into()));
        }
        Ok(Self { start, end, current_fraction })
    }

    pub fn length(&self) -> T {
        (self.end - self.start).norm()
    }

    /// Same segment traversed backwards.
    pub fn reversed(&self) -> Self {
        Self { start: self.end, end: self.start, current_fraction: self.current_fraction }
    }

    /// Euclidean distance from `point` to the closed segment.
    pub fn distance_to(&self, point: &Vec3<T>) -> T {
        let d = self.end - self.start;
        let s = ((point - self.start).dot(&d) / d.norm_squared()).max(T::zero()).min(T::one());
        (point - (self.start + d * s)).norm()
    }
}

/// Field in tesla of `current` amperes flowing along `seg` (times its
/// `current_fraction`).
pub fn segment_field<T: Real>(seg: &WireSegment<T>, current: T, point: &Vec3<T>) -> Result<Vec3<T>> {
    let dist = seg.distance_to(point);
    if dist < T::lit(SINGULAR_DISTANCE) {
        return Err(Error::SingularPoint { distance: dist.as_f64(), threshold: SINGULAR_DISTANCE });
    }
    let r1 = seg.start - point;
    let r2 = seg.end - point;
    let (n1, n2) = (r1.norm(), r2.norm());
    let denom = n1 * n2 * (n1 * n2 + r1.dot(&r2));
    let k = T::lit(MU0_OVER_4PI) * current * seg.current_fraction * (n1 + n2) / denom;
    Ok(r1.cross(&r2) * k)
}

/// Sum of [`segment_field`] over a path.
pub fn path_field<T: Real>(segments: &[WireSegment<T>], current: T, point: &Vec3<T>) -> Result<Vec3<T>> {
    let mut b = Vec3::zeros();
    for seg in segments {
        b += segment_field(seg, current, point)?;
    }
    Ok(b)
}
