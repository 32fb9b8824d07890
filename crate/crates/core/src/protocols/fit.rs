//! Least-squares sinusoid fit used to read frequencies off population traces.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidFit<T: Real> {
    /// Angular frequency of `a + b cos ωt + c sin ωt`.
    pub omega: T,
    pub offset: T,
    pub amplitude: T,
    /// Largest absolute residual over the samples.
    pub max_residual: T,
}

fn linear_fit<T: Real>(t: &[T], y: &[T], omega: T) -> Option<(DVector<T>, T)> {
    let a = DMatrix::from_fn(t.len(), 3, |i, j| match j {
        0 => T::one(),
        1 => (omega * t[i]).cos(),
        _ => (omega * t[i]).sin(),
    });
    let b = DVector::from_column_slice(y);
    let coef = a.clone().svd(true, true).solve(&b, T::eps()).ok()?;
    let r = &a * &coef - b;
    Some((coef, r.norm_squared()))
}

/// Fits `a + b cos ωt + c sin ωt` with `ω` searched in `[lo, hi]`: a coarse
/// scan followed by golden-section refinement of the residual.
pub fn fit_sinusoid<T: Real>(t: &[T], y: &[T], lo: T, hi: T) -> Result<SinusoidFit<T>> {
    if t.len() != y.len() || t.len() < 4 {
        return Err(Error::InvalidParameter("sinusoid fit needs at least 4 matched samples".into()));
    }
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::InvalidParameter(format!("bad frequency bracket [{lo}, {hi}]")));
    }
    let ssr = |w: T| linear_fit(t, y, w).map(|(_, s)| s).unwrap_or_else(|| T::max_value().unwrap());
    let scan = 64;
    let step = (hi - lo) / T::from_usize(scan).unwrap();
    let best = (0..=scan)
        .map(|k| lo + step * T::from_usize(k).unwrap())
        .map(|w| (w, ssr(w)))
        .fold((lo, T::max_value().unwrap()), |acc, x| if x.1 < acc.1 { x } else { acc });
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (ssr(c), ssr(d));
    for _ in 0..200 {
        if (b - a) <= T::eps() * T::lit(4.0) * b {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = ssr(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = ssr(d);
        }
    }
    let omega = (a + b) / T::lit(2.0);
    let (coef, _) = linear_fit(t, y, omega)
        .ok_or_else(|| Error::NotConverged("sinusoid least squares failed".into()))?;
    let max_residual = t.iter().zip(y).fold(T::zero(), |m, (&ti, &yi)| {
        let model = coef[0] + coef[1] * (omega * ti).cos() + coef[2] * (omega * ti).sin();
        m.max((model - yi).abs())
    });
    Ok(SinusoidFit {
        omega,
        offset: coef[0],
        amplitude: (coef[1] * coef[1] + coef[2] * coef[2]).sqrt(),
        max_residual,
    })
}
