//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All physics is written against [`Real`], which is implemented for `f32`
//! and `f64`. Hermiticity and unitarity tolerances in the tests are tuned
//! for `f64`; `f32` is useful for quick coupling maps.

use nalgebra as na;
use num_traits as nt;

pub use na::Complex;

/// Floating point types the simulation core can run on.
pub trait Real:
    na::RealField + Copy + nt::FromPrimitive + nt::ToPrimitive + std::fmt::Display + Send + Sync
{
    /// Lossy conversion from an `f64` literal.
    fn lit(value: f64) -> Self {
        na::convert(value)
    }

    /// Lossy conversion back to `f64` for reporting.
    fn as_f64(self) -> f64 {
        nt::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Machine epsilon.
    fn eps() -> Self {
        Self::default_epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Real scalar embedded as a complex number.
#[inline]
pub fn cplx<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Shorthand for `Complex::new(T::lit(re), T::lit(im))`.
#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}
