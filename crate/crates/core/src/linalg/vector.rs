use std::fmt;
use std::ops::Index;

use super::scalar::{Field, Scalar};

/// Dense coordinates of an element with respect to a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordVector {
    field: Field,
    coords: Vec<Scalar>,
}

impl CoordVector {
    pub fn zeros(field: Field, dim: usize) -> Self {
        Self {
            field,
            coords: vec![field.zero(); dim],
        }
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dim {dim}");
        let mut v = Self::zeros(field, dim);
        v.coords[i] = field.one();
        v
    }

    pub fn from_scalars(field: Field, coords: Vec<Scalar>) -> Self {
        debug_assert!(coords.iter().all(|c| c.field() == field));
        Self { field, coords }
    }

    pub fn from_ints(field: Field, ints: &[i64]) -> Self {
        Self {
            field,
            coords: ints.iter().map(|&n| field.int(n)).collect(),
        }
    }

    /// Builds a vector from `(index, value)` pairs; repeated indices add up.
    pub fn from_sparse(field: Field, dim: usize, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Self::zeros(field, dim);
        for (i, c) in entries {
            v.coords[i] += &c;
        }
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn get_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.coords[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.coords.iter()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        Self {
            field: self.field,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_dim(other);
        Self {
            field: self.field,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            field: self.field,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        self.check_dim(other);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }

    /// Coordinates of `self ⊗ other`, left factor major.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut coords = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.coords {
            for b in &other.coords {
                coords.push(a * b);
            }
        }
        Self {
            field: self.field,
            coords,
        }
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "vector dimension mismatch: {} vs {}",
            self.dim(),
            other.dim()
        );
    }
}

impl Index<usize> for CoordVector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl fmt::Display for CoordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
