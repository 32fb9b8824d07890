//! Commutator identities behind the second-order effective Hamiltonians and
//! the QND invariant of the dispersive transmon–ensemble coupling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{HilbertSpace, Operator};
use crate::scalar::Real;

use super::dispersive::dispersive_hamiltonian;
use super::system::{expect_kind, Ops, SystemKind, SystemSpec, CAVITY, ENSEMBLE, SPIN1, SPIN2, TRANSMON};

/// Absolute max-entry tolerance for an identity to pass.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub max_error: f64,
    pub pass: bool,
}

struct Identity<T: Real> {
    name: &'static str,
    lhs: Operator<T>,
    rhs: Operator<T>,
}

fn comm<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<Operator<T>> {
    a.commutator(b)
}

fn s_t_s_identities<T: Real>() -> Result<(HilbertSpace, Vec<Identity<T>>)> {
    let space = HilbertSpace::new([(TRANSMON, 2), (SPIN1, 2), (SPIN2, 2)])?;
    let ops = Ops::<T>::new(space.clone())?;
    let (tz, tm, tp) = (&ops.tau_z, &ops.tau_minus, &ops.tau_plus);
    let s1m = ops.lowering(SPIN1)?;
    let s2m = ops.lowering(SPIN2)?;
    let (s1p, s2p) = (s1m.dagger(), s2m.dagger());
    let (z1, z2) = (ops.spin_z(SPIN1)?, ops.spin_z(SPIN2)?);
    let x1 = &(&s1p * tm) - &(&s1m * tp);
    let x2 = &(&s2p * tm) - &(&s2m * tp);
    let v1 = &(&s1p * tm) + &(&s1m * tp);
    let v2 = &(&s2p * tm) + &(&s2m * tp);
    let hop = &(&(&s1p * &s2m) + &(&s1m * &s2p)) * tz;
    let zero = Operator::zeros(&space);
    let two = |op: &Operator<T>| op.scale_real(T::lit(2.0));
    let ids = vec![
        Identity { name: "[τ_z, X₁] = −2σ₁⁺τ₋ − 2σ₁⁻τ₊", lhs: comm(tz, &x1)?, rhs: -&two(&v1) },
        Identity { name: "[τ_z, X₂] = −2σ₂⁺τ₋ − 2σ₂⁻τ₊", lhs: comm(tz, &x2)?, rhs: -&two(&v2) },
        Identity { name: "[σ_z1, X₁] = 2σ₁⁺τ₋ + 2σ₁⁻τ₊", lhs: comm(&z1, &x1)?, rhs: two(&v1) },
        Identity { name: "[σ_z1, X₂] = 0", lhs: comm(&z1, &x2)?, rhs: zero.clone() },
        Identity { name: "[σ_z2, X₁] = 0", lhs: comm(&z2, &x1)?, rhs: zero },
        Identity { name: "[σ_z2, X₂] = 2σ₂⁺τ₋ + 2σ₂⁻τ₊", lhs: comm(&z2, &x2)?, rhs: two(&v2) },
        Identity { name: "[σ₁⁺τ₋ + σ₁⁻τ₊, X₁] = τ_z − σ_z1", lhs: comm(&v1, &x1)?, rhs: tz - &z1 },
        Identity { name: "[σ₁⁺τ₋ + σ₁⁻τ₊, X₂] = (σ₁⁺σ₂⁻ + σ₁⁻σ₂⁺)τ_z", lhs: comm(&v1, &x2)?, rhs: hop.clone() },
        Identity { name: "[σ₂⁺τ₋ + σ₂⁻τ₊, X₁] = (σ₁⁺σ₂⁻ + σ₁⁻σ₂⁺)τ_z", lhs: comm(&v2, &x1)?, rhs: hop },
        Identity { name: "[σ₂⁺τ₋ + σ₂⁻τ₊, X₂] = τ_z − σ_z2", lhs: comm(&v2, &x2)?, rhs: tz - &z2 },
    ];
    Ok((space, ids))
}

fn c_t_ens_identities<T: Real>(levels: usize) -> Result<(HilbertSpace, Vec<Identity<T>>)> {
    let space = HilbertSpace::new([(CAVITY, levels), (TRANSMON, 2), (ENSEMBLE, levels)])?;
    let ops = Ops::<T>::new(space.clone())?;
    let (tz, tm, tp) = (&ops.tau_z, &ops.tau_minus, &ops.tau_plus);
    let a = ops.lowering(CAVITY)?;
    let s = ops.lowering(ENSEMBLE)?;
    let (ad, sd) = (a.dagger(), s.dagger());
    let (na, ns) = (&ad * &a, &sd * &s);
    let y1 = &(&ad * tm) - &(&a * tp);
    let y2 = &(&sd * tm) - &(&s * tp);
    let v1 = &(&ad * tm) + &(&a * tp);
    let v2 = &(&sd * tm) + &(&s * tp);
    let hop = &(&(&ad * &s) + &(&a * &sd)) * tz;
    let dressed = |n: &Operator<T>| &(&(n * tz).scale_real(T::lit(2.0)) + tz) + &ops.identity;
    let zero = Operator::zeros(&space);
    let two = |op: &Operator<T>| op.scale_real(T::lit(2.0));
    let ids = vec![
        Identity { name: "[τ_z, Y₁] = −2a†τ₋ − 2aτ₊", lhs: comm(tz, &y1)?, rhs: -&two(&v1) },
        Identity { name: "[τ_z, Y₂] = −2s†τ₋ − 2sτ₊", lhs: comm(tz, &y2)?, rhs: -&two(&v2) },
        Identity { name: "[a†a, Y₁] = a†τ₋ + aτ₊", lhs: comm(&na, &y1)?, rhs: v1.clone() },
        Identity { name: "[a†a, Y₂] = 0", lhs: comm(&na, &y2)?, rhs: zero.clone() },
        Identity { name: "[s†s, Y₁] = 0", lhs: comm(&ns, &y1)?, rhs: zero },
        Identity { name: "[s†s, Y₂] = s†τ₋ + sτ₊", lhs: comm(&ns, &y2)?, rhs: v2.clone() },
        Identity { name: "[a†τ₋ + aτ₊, Y₁] = 2a†aτ_z + τ_z + 1", lhs: comm(&v1, &y1)?, rhs: dressed(&na) },
        Identity { name: "[a†τ₋ + aτ₊, Y₂] = (a†s + as†)τ_z", lhs: comm(&v1, &y2)?, rhs: hop.clone() },
        Identity { name: "[s†τ₋ + sτ₊, Y₁] = (a†s + as†)τ_z", lhs: comm(&v2, &y1)?, rhs: hop },
        Identity { name: "[s†τ₋ + sτ₊, Y₂] = 2s†sτ_z + τ_z + 1", lhs: comm(&v2, &y2)?, rhs: dressed(&ns) },
    ];
    Ok((space, ids))
}

fn evaluate<T: Real>(space: &HilbertSpace, ids: &[Identity<T>]) -> Result<Vec<(String, f64)>> {
    // Products of truncated ladders are wrong only on the top Fock level.
    let tops: Vec<(usize, usize)> = space
        .factors()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.label != TRANSMON && f.dim > 2)
        .map(|(k, f)| (k, f.dim - 1))
        .collect();
    let keep = |i: usize| {
        let d = space.digits(i);
        tops.iter().all(|&(k, top)| d[k] < top)
    };
    ids.iter()
        .map(|id| Ok((id.name.to_string(), id.lhs.max_distance_on(&id.rhs, keep)?.as_f64())))
        .collect()
}

/// Checks every identity of the s-t-s or c-t-ens table.
///
/// The bosonic table is evaluated at `levels` and again at `levels + 2`; the
/// reported error is the larger of the two.
pub fn commutator_table_check<T: Real>(kind: SystemKind, levels: usize) -> Result<Vec<IdentityReport>> {
    let runs = match kind {
        SystemKind::Sts => {
            let (space, ids) = s_t_s_identities::<T>()?;
            vec![evaluate(&space, &ids)?]
        }
        SystemKind::CTEns => {
            if levels < super::system::MIN_BOSON_LEVELS {
                return Err(Error::InvalidParameter(format!("truncation {levels} is below 3")));
            }
            let mut runs = Vec::new();
            for n in [levels, levels + 2] {
                let (space, ids) = c_t_ens_identities::<T>(n)?;
                runs.push(evaluate(&space, &ids)?);
            }
            runs
        }
        other => {
            return Err(Error::KindMismatch { expected: "s-t-s or c-t-ens".into(), found: other.name().into() })
        }
    };
    let tol = IDENTITY_TOLERANCE.max(T::eps().as_f64() * 64.0);
    Ok((0..runs[0].len())
        .map(|k| {
            let max_error = runs.iter().map(|r| r[k].1).fold(0.0, f64::max);
            IdentityReport { identity: runs[0][k].0.clone(), max_error, pass: max_error < tol }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QndReport {
    /// `‖[s†s τ_z, H_dispersive]‖_max`.
    pub dispersive: f64,
    /// `‖[s†s τ_z, H_t-ens]‖_max` for the full coupling.
    pub full: f64,
}

pub fn qnd_invariant_check<T: Real>(spec: &SystemSpec<T>) -> Result<QndReport> {
    expect_kind(spec, SystemKind::TEns)?;
    let ops = Ops::<T>::new(spec.space()?)?;
    let probe = ops.number(ENSEMBLE)?.try_mul(&ops.tau_z)?;
    Ok(QndReport {
        dispersive: probe.commutator(&dispersive_hamiltonian(spec)?)?.max_abs().as_f64(),
        full: probe.commutator(&spec.hamiltonian()?)?.max_abs().as_f64(),
    })
}
