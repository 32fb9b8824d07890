//! Collective coupling of a cubic NV ensemble placed on top of the transmon.

use nalgebra::ComplexField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::biot_savart::{Vec3, WireSegment};
use super::coupling::{coupling_from_field, SpinSite};
use super::geometry::{FieldSource, Geometry};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::transmon::TransmonParams;

/// Spins per jitter stream; fixed so results do not depend on thread count.
pub const CHUNK: usize = 4096;
/// Refuse ensembles larger than this many sampled spins.
pub const MAX_SPINS: u64 = 50_000_000;

const CELL_STREAM: u64 = u64::MAX;

/// The four NV axes, cycled over spin index.
pub fn nv_axes<T: Real>() -> [Vec3<T>; 4] {
    let s = T::one() / T::lit(3.0).sqrt();
    let v = |a: f64, b: f64, c: f64| Vec3::new(T::lit(a) * s, T::lit(b) * s, T::lit(c) * s);
    [v(1.0, 1.0, 1.0), v(1.0, -1.0, -1.0), v(-1.0, 1.0, -1.0), v(-1.0, -1.0, 1.0)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec<T: Real> {
    /// Cube edge `L_N`, meters.
    pub edge: T,
    /// Near-resonant spins per m³.
    pub density: T,
    /// Cube center in the `x`-`y` plane, meters.
    pub center: (T, T),
    /// Distance from the transmon top surface to the cube bottom, meters.
    pub gap: T,
    pub seed: u64,
}

impl<T: Real> EnsembleSpec<T> {
    pub fn new(edge: T, density: T, seed: u64) -> Result<Self> {
        let spec = Self { edge, density, center: (T::zero(), T::zero()), gap: T::zero(), seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.edge > T::zero()) || !self.edge.is_finite() {
            return Err(Error::InvalidParameter(format!("cube edge must be positive, got {}", self.edge)));
        }
        if !(self.density > T::zero()) || !self.density.is_finite() {
            return Err(Error::InvalidParameter(format!("spin density must be positive, got {}", self.density)));
        }
        if ![self.center.0, self.center.1, self.gap].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("ensemble placement is not finite".into()));
        }
        Ok(())
    }

    /// `N = round(n·L_N³)`.
    pub fn spin_count(&self) -> Result<u64> {
        self.validate()?;
        let expected = self.density.as_f64() * self.edge.as_f64().powi(3);
        let n = expected.round();
        if n < 1.0 {
            return Err(Error::ZeroSpins(expected));
        }
        if n > MAX_SPINS as f64 {
            return Err(Error::InvalidParameter(format!("{n} spins exceeds the limit of {MAX_SPINS}")));
        }
        Ok(n as u64)
    }

    fn bounds(&self, g: &Geometry<T>) -> (Vec3<T>, Vec3<T>) {
        let half = self.edge / T::lit(2.0);
        let z0 = g.top_surface() + self.gap;
        (
            Vec3::new(self.center.0 - half, self.center.1 - half, z0),
            Vec3::new(self.center.0 + half, self.center.1 + half, z0 + self.edge),
        )
    }
}

fn segment_hits_box<T: Real>(seg: &WireSegment<T>, lo: &Vec3<T>, hi: &Vec3<T>) -> bool {
    let d = seg.end - seg.start;
    let (mut t0, mut t1) = (T::zero(), T::one());
    for k in 0..3 {
        if d[k] == T::zero() {
            if seg.start[k] < lo[k] || seg.start[k] > hi[k] {
                return false;
            }
            continue;
        }
        let a = (lo[k] - seg.start[k]) / d[k];
        let b = (hi[k] - seg.start[k]) / d[k];
        t0 = t0.max(a.min(b));
        t1 = t1.min(a.max(b));
        if t0 > t1 {
            return false;
        }
    }
    true
}

/// Deterministic stratified placement: `k = ⌈N^{1/3}⌉` cells per edge, `N`
/// distinct cells drawn with the seed, one jittered spin per cell.
#[derive(Debug, Clone)]
pub struct Placement<T: Real> {
    cells: Vec<usize>,
    k: usize,
    origin: Vec3<T>,
    cell: T,
    seed: u64,
}

impl<T: Real> Placement<T> {
    pub fn new(spec: &EnsembleSpec<T>, g: &Geometry<T>) -> Result<Self> {
        let n = spec.spin_count()? as usize;
        let (lo, hi) = spec.bounds(g);
        if g.segments.iter().any(|s| segment_hits_box(s, &lo, &hi)) {
            return Err(Error::CubeIntersectsWire);
        }
        let mut k = (n as f64).cbrt().round() as usize;
        while k.pow(3) < n {
            k += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(CELL_STREAM);
        let mut cells = rand::seq::index::sample(&mut rng, k.pow(3), n).into_vec();
        cells.sort_unstable();
        Ok(Self { cells, k, origin: lo, cell: spec.edge / T::from_usize(k).unwrap(), seed: spec.seed })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn chunks(&self) -> usize {
        self.cells.len().div_ceil(CHUNK)
    }

    /// Sites of chunk `c`, in index order.
    pub fn chunk_sites(&self, c: usize) -> Result<Vec<SpinSite<T>>> {
        let axes = nv_axes::<T>();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(c as u64);
        let end = ((c + 1) * CHUNK).min(self.cells.len());
        (c * CHUNK..end)
            .map(|i| {
                let cell = self.cells[i];
                let idx = [cell / (self.k * self.k), (cell / self.k) % self.k, cell % self.k];
                let mut p = self.origin;
                for (axis, &j) in idx.iter().enumerate() {
                    let u: f64 = rng.gen();
                    p[axis] += self.cell * (T::from_usize(j).unwrap() + T::lit(u));
                }
                SpinSite::new(p, axes[i % 4])
            })
            .collect()
    }

    pub fn sites(&self) -> Result<Vec<SpinSite<T>>> {
        let mut out = Vec::with_capacity(self.len());
        for c in 0..self.chunks() {
            out.extend(self.chunk_sites(c)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleCoupling<T: Real> {
    /// `g_t-ens = √(Σ_j |g_j|²)`, rad/s.
    pub g: T,
    pub spins: u64,
    pub seed: u64,
    /// `g_t-ens/√N`.
    pub rms_single: T,
    /// Mean of the per-spin longitudinal terms `M_z/ħ`, rad/s.
    pub longitudinal_mean: T,
    /// Standard deviation of the same (inhomogeneous broadening), rad/s.
    pub longitudinal_spread: T,
}

#[derive(Clone, Copy)]
struct Partial<T> {
    g2: T,
    mz: T,
    mz2: T,
}

pub fn ensemble_coupling<T: Real>(
    g: &Geometry<T>,
    params: &TransmonParams<T>,
    spec: &EnsembleSpec<T>,
) -> Result<EnsembleCoupling<T>> {
    let source = FieldSource::new(g, params)?;
    let placement = Placement::new(spec, g)?;
    let partials: Vec<Partial<T>> = (0..placement.chunks())
        .into_par_iter()
        .map(|c| {
            let mut acc = Partial { g2: T::zero(), mz: T::zero(), mz2: T::zero() };
            for site in placement.chunk_sites(c)? {
                let s = coupling_from_field(&source.field(&site.position)?, &site);
                acc.g2 += s.g.modulus_squared();
                acc.mz += s.longitudinal;
                acc.mz2 += s.longitudinal * s.longitudinal;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = Partial { g2: T::zero(), mz: T::zero(), mz2: T::zero() };
    for p in partials {
        total.g2 += p.g2;
        total.mz += p.mz;
        total.mz2 += p.mz2;
    }
    let n = T::from_usize(placement.len()).unwrap();
    let mean = total.mz / n;
    let var = (total.mz2 / n - mean * mean).max(T::zero());
    let gens = total.g2.sqrt();
    Ok(EnsembleCoupling {
        g: gens,
        spins: placement.len() as u64,
        seed: spec.seed,
        rms_single: gens / n.sqrt(),
        longitudinal_mean: mean,
        longitudinal_spread: var.sqrt(),
    })
}
