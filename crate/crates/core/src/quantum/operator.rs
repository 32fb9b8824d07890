use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};

use super::space::HilbertSpace;
use crate::error::{Error, Result};
use crate::scalar::{cplx, Complex, Real};

/// Relative hermiticity tolerance for Hamiltonians.
pub fn hermiticity_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::eps() * T::lit(64.0))
}

/// Dense operator on a labeled tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Real> {
    space: HilbertSpace,
    matrix: DMatrix<Complex<T>>,
}

/// Eigen-decomposition of a hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigen<T: Real> {
    pub values: Vec<T>,
    /// Column `k` holds the eigenvector for `values[k]`.
    pub vectors: DMatrix<Complex<T>>,
}

impl<T: Real> Operator<T> {
    pub fn new(space: HilbertSpace, matrix: DMatrix<Complex<T>>) -> Result<Self> {
        let dim = space.dim();
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidParameter(format!(
                "operator matrix is {}x{}, not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.nrows() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.nrows() });
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let d = space.dim();
        Self { space: space.clone(), matrix: DMatrix::identity(d, d) }
    }

    pub fn zeros(space: &HilbertSpace) -> Self {
        let d = space.dim();
        Self { space: space.clone(), matrix: DMatrix::zeros(d, d) }
    }

    /// Diagonal operator with real entries.
    pub fn from_diagonal(space: &HilbertSpace, diag: &[T]) -> Result<Self> {
        let d = space.dim();
        if diag.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: diag.len() });
        }
        let mut m = DMatrix::zeros(d, d);
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = cplx(v);
        }
        Ok(Self { space: space.clone(), matrix: m })
    }

    /// Operator built entry by entry from a closure over flat indices.
    pub fn from_fn(space: &HilbertSpace, f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let d = space.dim();
        Self { space: space.clone(), matrix: DMatrix::from_fn(d, d, f) }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex<T>> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.adjoint() }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self { space: self.space.clone(), matrix: &self.matrix * factor }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(cplx(factor))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.matrix.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
    }

    /// `‖H − H†‖_max / ‖H‖_max`, zero for the zero operator.
    pub fn hermiticity_error(&self) -> T {
        let scale = self.max_abs();
        if scale == T::zero() {
            return T::zero();
        }
        let d = self.dim();
        let mut worst = T::zero();
        for i in 0..d {
            for j in i..d {
                let diff = self.matrix[(i, j)] - self.matrix[(j, i)].conj();
                worst = worst.max(diff.modulus());
            }
        }
        worst / scale
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() < hermiticity_tolerance::<T>()
    }

    /// Errors with [`Error::NotHermitian`] unless hermitian within tolerance.
    pub fn ensure_hermitian(&self) -> Result<()> {
        let err = self.hermiticity_error();
        if err < hermiticity_tolerance::<T>() {
            Ok(())
        } else {
            Err(Error::NotHermitian(err.as_f64()))
        }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            Err(Error::SpaceMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix * &other.matrix })
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let ab = &self.matrix * &other.matrix;
        let ba = &other.matrix * &self.matrix;
        Ok(Self { space: self.space.clone(), matrix: ab - ba })
    }

    /// Max-entry distance between two operators on the same space.
    pub fn max_distance(&self, other: &Self) -> Result<T> {
        self.check_space(other)?;
        Ok((&self.matrix - &other.matrix).iter().fold(T::zero(), |acc, z| acc.max(z.modulus())))
    }

    /// Max-entry distance restricted to the basis states for which `keep`
    /// returns true (rows and columns).
    pub fn max_distance_on(&self, other: &Self, keep: impl Fn(usize) -> bool) -> Result<T> {
        self.check_space(other)?;
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| keep(i)).collect();
        let mut worst = T::zero();
        for &i in &idx {
            for &j in &idx {
                worst = worst.max((self.matrix[(i, j)] - other.matrix[(i, j)]).modulus());
            }
        }
        Ok(worst)
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    /// Real diagonal entries.
    pub fn diagonal_real(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Hermitian eigen-decomposition; the matrix is symmetrized first.
    pub fn eigh(&self) -> Result<Eigen<T>> {
        self.ensure_hermitian()?;
        let half = cplx(T::lit(0.5));
        let sym = (&self.matrix + self.matrix.adjoint()) * half;
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap_or(std::cmp::Ordering::Equal)
        });
        let values: Vec<T> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let d = self.dim();
        let vectors = DMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok(Eigen { values, vectors })
    }

    /// Ascending eigenvalues of a hermitian operator.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(self.eigh()?.values)
    }
}

impl<T: Real> Eigen<T> {
    /// For each eigenvector, the basis state carrying most of its weight and
    /// that weight.
    pub fn dominant_labels(&self) -> Vec<(usize, T)> {
        let d = self.vectors.nrows();
        (0..self.values.len())
            .map(|k| {
                let mut best = (0, T::zero());
                for i in 0..d {
                    let w = self.vectors[(i, k)].modulus_squared();
                    if w > best.1 {
                        best = (i, w);
                    }
                }
                best
            })
            .collect()
    }

    /// Eigenvalue whose eigenvector overlaps most with basis state `index`,
    /// with that overlap probability.
    pub fn energy_of_basis_state(&self, index: usize) -> (T, T) {
        let mut best = (T::zero(), T::zero());
        for k in 0..self.values.len() {
            let w = self.vectors[(index, k)].modulus_squared();
            if w > best.1 {
                best = (self.values[k], w);
            }
        }
        best
    }
}

fn assert_same_space(a: &HilbertSpace, b: &HilbertSpace) {
    assert!(a == b, "operator space mismatch: {a} vs {b}");
}

impl<T: Real> Add for &Operator<T> {
    type Output = Operator<T>;

    fn add(self, rhs: Self) -> Operator<T> {
        assert_same_space(&self.space, &rhs.space);
        Operator { space: self.space.clone(), matrix: &self.matrix + &rhs.matrix }
    }
}

impl<T: Real> Sub for &Operator<T> {
    type Output = Operator<T>;

    fn sub(self, rhs: Self) -> Operator<T> {
        assert_same_space(&self.space, &rhs.space);
        Operator { space: self.space.clone(), matrix: &self.matrix - &rhs.matrix }
    }
}

impl<T: Real> Mul for &Operator<T> {
    type Output = Operator<T>;

    fn mul(self, rhs: Self) -> Operator<T> {
        assert_same_space(&self.space, &rhs.space);
        Operator { space: self.space.clone(), matrix: &self.matrix * &rhs.matrix }
    }
}

impl<T: Real> Neg for &Operator<T> {
    type Output = Operator<T>;

    fn neg(self) -> Operator<T> {
        Operator { space: self.space.clone(), matrix: -&self.matrix }
    }
}

impl<T: Real> Add for Operator<T> {
    type Output = Operator<T>;

    fn add(self, rhs: Self) -> Operator<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for Operator<T> {
    type Output = Operator<T>;

    fn sub(self, rhs: Self) -> Operator<T> {
        &self - &rhs
    }
}

impl<T: Real> Mul for Operator<T> {
    type Output = Operator<T>;

    fn mul(self, rhs: Self) -> Operator<T> {
        &self * &rhs
    }
}

/// Sum of operators on a common space; `None` for an empty iterator.
pub fn sum<'a, T: Real + 'a>(ops: impl IntoIterator<Item = &'a Operator<T>>) -> Option<Operator<T>> {
    let mut it = ops.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, op| &acc + op))
}
