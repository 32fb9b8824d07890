//! Single-factor operators and their embedding into product spaces.
//!
//! Two-level operators use the basis `{|↓⟩, |↑⟩}` = `{|0⟩, |1⟩}`, so the
//! truncated ladder of dimension 2 is exactly `τ₋` and `τ_z = diag(−1, +1)`.

use nalgebra::DMatrix;

use super::operator::Operator;
use super::space::HilbertSpace;
use crate::error::{Error, Result};
use crate::scalar::{cplx, Complex, Real};

/// Label given to the anonymous factor of a single-factor operator.
pub const LOCAL_LABEL: &str = "local";

fn local_space(dim: usize) -> Result<HilbertSpace> {
    HilbertSpace::single(LOCAL_LABEL, dim)
}

/// Truncated lowering operator: `√k` at `(k−1, k)`.
pub fn ladder<T: Real>(dim: usize) -> Result<Operator<T>> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("ladder dimension {dim} < 2")));
    }
    let space = local_space(dim)?;
    Ok(Operator::from_fn(&space, |i, j| {
        if j == i + 1 {
            cplx(T::from_usize(j).unwrap().sqrt())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }))
}

/// Number operator `b†b` of dimension `dim`.
pub fn number<T: Real>(dim: usize) -> Result<Operator<T>> {
    let space = local_space(dim)?;
    let diag: Vec<T> = (0..dim).map(|k| T::from_usize(k).unwrap()).collect();
    Operator::from_diagonal(&space, &diag)
}

pub fn local_identity<T: Real>(dim: usize) -> Result<Operator<T>> {
    Ok(Operator::identity(&local_space(dim)?))
}

/// `σ₋ = |↓⟩⟨↑|`.
pub fn sigma_minus<T: Real>() -> Operator<T> {
    ladder(2).expect("dimension 2 is valid")
}

/// `σ₊ = |↑⟩⟨↓|`.
pub fn sigma_plus<T: Real>() -> Operator<T> {
    sigma_minus::<T>().dagger()
}

/// `σ_z = |↑⟩⟨↑| − |↓⟩⟨↓|`.
pub fn sigma_z<T: Real>() -> Operator<T> {
    let space = local_space(2).expect("dimension 2 is valid");
    Operator::from_diagonal(&space, &[-T::one(), T::one()]).expect("diagonal length matches")
}

/// `σ_x = σ₊ + σ₋`.
pub fn sigma_x<T: Real>() -> Operator<T> {
    &sigma_plus::<T>() + &sigma_minus::<T>()
}

/// Kronecker embedding `I ⊗ … ⊗ op ⊗ … ⊗ I` of a single-factor operator
/// into the factor named `label`.
pub fn embed<T: Real>(op: &Operator<T>, label: &str, space: &HilbertSpace) -> Result<Operator<T>> {
    if op.space().factors().len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "embed expects a single-factor operator, got {}",
            op.space()
        )));
    }
    let pos = space.position(label)?;
    let factors = space.factors();
    let target = factors[pos].dim;
    if op.dim() != target {
        return Err(Error::DimensionMismatch { expected: target, found: op.dim() });
    }
    let left: usize = factors[..pos].iter().map(|f| f.dim).product();
    let right: usize = factors[pos + 1..].iter().map(|f| f.dim).product();
    let m = op.matrix();
    let d = space.dim();
    let mut out = DMatrix::zeros(d, d);
    for l in 0..left {
        for a in 0..target {
            for b in 0..target {
                let v = m[(a, b)];
                if v.re == T::zero() && v.im == T::zero() {
                    continue;
                }
                for r in 0..right {
                    let row = (l * target + a) * right + r;
                    let col = (l * target + b) * right + r;
                    out[(row, col)] = v;
                }
            }
        }
    }
    Operator::new(space.clone(), out)
}
