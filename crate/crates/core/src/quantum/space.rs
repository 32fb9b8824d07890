use std::fmt;

use crate::error::{Error, Result};

/// One tensor factor of a [`HilbertSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

/// Ordered tensor product of labeled factors.
///
/// The first factor is the most significant digit of the flat basis index,
/// matching the usual Kronecker ordering `A ⊗ B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    factors: Vec<Factor>,
}

impl HilbertSpace {
    pub fn new<I, S>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Factor> = Vec::new();
        for (label, dim) in factors {
            let label = label.into();
            if dim < 2 {
                return Err(Error::InvalidParameter(format!(
                    "factor `{label}` has dimension {dim}; every factor needs at least 2 levels"
                )));
            }
            if out.iter().any(|f| f.label == label) {
                return Err(Error::DuplicateLabel(label));
            }
            out.push(Factor { label, dim });
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("a Hilbert space needs at least one factor".into()));
        }
        Ok(Self { factors: out })
    }

    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new([(label.into(), dim)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total dimension (product of the factor dimensions).
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn factor_dim(&self, label: &str) -> Result<usize> {
        Ok(self.factors[self.position(label)?].dim)
    }

    /// Splits a flat basis index into per-factor levels.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (slot, f) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim;
            index /= f.dim;
        }
        digits
    }

    /// Flat basis index of a product state given per-factor levels.
    pub fn index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: digits.len() });
        }
        let mut index = 0;
        for (&d, f) in digits.iter().zip(&self.factors) {
            if d >= f.dim {
                return Err(Error::InvalidParameter(format!(
                    "level {d} out of range for factor `{}` (dimension {})",
                    f.label, f.dim
                )));
            }
            index = index * f.dim + d;
        }
        Ok(index)
    }

    /// Flat index from `(label, level)` pairs; unnamed factors sit in level 0.
    pub fn index_of_levels(&self, levels: &[(&str, usize)]) -> Result<usize> {
        let mut digits = vec![0; self.factors.len()];
        for &(label, level) in levels {
            digits[self.position(label)?] = level;
        }
        self.index(&digits)
    }

    /// Level of factor `label` in basis state `index`.
    pub fn level(&self, index: usize, label: &str) -> Result<usize> {
        let pos = self.position(label)?;
        Ok(self.digits(index)[pos])
    }
}

impl fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| format!("{}[{}]", x.label, x.dim)).collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}
