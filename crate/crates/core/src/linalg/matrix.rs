use std::fmt;

use super::scalar::{Field, Scalar};
use super::vector::CoordVector;
use crate::error::{Error, Result};

/// A linear map between coordinate spaces, stored as a dense
/// `dst_dim × src_dim` matrix in row-major order.
///
/// Tensor-product spaces are always indexed left factor major: the basis
/// vector `e_i ⊗ f_j` of `U ⊗ V` sits at position `i * dim V + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn zeros(field: Field, dst_dim: usize, src_dim: usize) -> Self {
        Self {
            field,
            rows: dst_dim,
            cols: src_dim,
            entries: vec![field.zero(); dst_dim * src_dim],
        }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        let mut m = Self::zeros(field, dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, dst_dim: usize, src_dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(dst_dim * src_dim);
        for r in 0..dst_dim {
            for c in 0..src_dim {
                entries.push(f(r, c));
            }
        }
        Self {
            field,
            rows: dst_dim,
            cols: src_dim,
            entries,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::dims("ragged matrix rows"));
        }
        Ok(Self {
            field,
            rows: n_rows,
            cols: n_cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&n| field.int(n)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }

    /// Row-major data with explicit shape.
    pub fn from_row_major(field: Field, dst_dim: usize, src_dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != dst_dim * src_dim {
            return Err(Error::dims(format!(
                "expected {} entries for a {dst_dim}x{src_dim} matrix, got {}",
                dst_dim * src_dim,
                entries.len()
            )));
        }
        Ok(Self {
            field,
            rows: dst_dim,
            cols: src_dim,
            entries,
        })
    }

    /// The matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(field: Field, dst_dim: usize, columns: &[CoordVector]) -> Self {
        assert!(columns.iter().all(|c| c.dim() == dst_dim));
        Self::from_fn(field, dst_dim, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn src_dim(&self) -> usize {
        self.cols
    }

    pub fn dst_dim(&self) -> usize {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> CoordVector {
        CoordVector::from_scalars(self.field, (0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn columns(&self) -> Vec<CoordVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `self · x`. Panics if `x.dim() != src_dim`.
    pub fn apply(&self, x: &CoordVector) -> CoordVector {
        assert_eq!(x.dim(), self.cols, "apply: vector dim {} vs map src_dim {}", x.dim(), self.cols);
        let mut out = CoordVector::zeros(self.field, self.rows);
        for (c, xc) in x.nonzero() {
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *out.get_mut(r) += &(a * xc);
                }
            }
        }
        out
    }

    pub fn try_apply(&self, x: &CoordVector) -> Result<CoordVector> {
        if x.dim() != self.cols {
            return Err(Error::dims(format!(
                "vector of dim {} applied to map with src_dim {}",
                x.dim(),
                self.cols
            )));
        }
        Ok(self.apply(x))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.cols, other.rows, "compose: inner dims {} vs {}", self.cols, other.rows);
        let mut out = LinearMap::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref(&mut rows).len()
    }

    /// Two-sided inverse of a square map, if it exists.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut rows);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let entries = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Some(LinearMap {
            field: self.field,
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Basis of `{x : self·x = 0}` read off the reduced row echelon form:
    /// one vector per free column, with that free coordinate set to 1.
    pub fn kernel_basis(&self) -> Vec<CoordVector> {
        let mut rows = self.row_vecs();
        let pivots = rref(&mut rows);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = CoordVector::basis(self.field, self.cols, f);
                for (row, &p) in pivots.iter().enumerate() {
                    *v.get_mut(p) = -&rows[row][f];
                }
                v
            })
            .collect()
    }

    fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// In-place reduced row echelon form with leftmost-nonzero pivoting.
/// Returns the pivot column of each nonzero row; rows past the rank are zero.
pub(crate) fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `map · x = rhs`. Returns `Ok(None)` when the system is
/// inconsistent; otherwise the solution with every free variable set to zero.
pub fn solve_linear(map: &LinearMap, rhs: &CoordVector) -> Result<Option<CoordVector>> {
    if rhs.dim() != map.dst_dim() {
        return Err(Error::dims(format!(
            "rhs has dim {} but map has dst_dim {}",
            rhs.dim(),
            map.dst_dim()
        )));
    }
    let n = map.src_dim();
    let mut rows: Vec<Vec<Scalar>> = (0..map.dst_dim())
        .map(|r| {
            let mut row = map.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = CoordVector::zeros(map.field(), n);
    for (row, &p) in pivots.iter().enumerate() {
        *x.get_mut(p) = rows[row][n].clone();
    }
    Ok(Some(x))
}

/// Reduced column echelon basis of the column space of `map`.
pub fn image_basis(map: &LinearMap) -> Vec<CoordVector> {
    let mut rows: Vec<Vec<Scalar>> = (0..map.src_dim())
        .map(|c| (0..map.dst_dim()).map(|r| map.get(r, c).clone()).collect())
        .collect();
    let rank = rref(&mut rows).len();
    rows.truncate(rank);
    rows.into_iter()
        .map(|r| CoordVector::from_scalars(map.field(), r))
        .collect()
}

/// Kronecker product `f ⊗ g`, left factor major on both sides.
pub fn kron(f: &LinearMap, g: &LinearMap) -> LinearMap {
    let rows = f.dst_dim() * g.dst_dim();
    let cols = f.src_dim() * g.src_dim();
    LinearMap::from_fn(f.field(), rows, cols, |r, c| {
        let a = f.get(r / g.dst_dim(), c / g.src_dim());
        if a.is_zero() {
            return f.field().zero();
        }
        a * g.get(r % g.dst_dim(), c % g.src_dim())
    })
}

/// A subspace described by its reduced echelon basis. Two subspaces are
/// equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<CoordVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient_dim: usize, vectors: &[CoordVector]) -> Self {
        let map = LinearMap::from_columns(field, ambient_dim, vectors);
        Self::image_of(&map)
    }

    pub fn image_of(map: &LinearMap) -> Self {
        let basis = image_basis(map);
        let pivots = basis
            .iter()
            .map(|b| b.nonzero().next().expect("echelon rows are nonzero").0)
            .collect();
        Self {
            ambient_dim: map.dst_dim(),
            basis,
            pivots,
        }
    }

    pub fn kernel_of(map: &LinearMap) -> Self {
        let ker = map.kernel_basis();
        Self::span(map.field(), map.src_dim(), &ker)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[CoordVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient_dim × dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self, field: Field) -> LinearMap {
        LinearMap::from_columns(field, self.ambient_dim, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords_of(&self, v: &CoordVector) -> Option<CoordVector> {
        let coords = CoordVector::from_scalars(
            v.field(),
            self.pivots.iter().map(|&p| v[p].clone()).collect(),
        );
        let mut back = CoordVector::zeros(v.field(), self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            back.add_scaled(c, b);
        }
        (back == *v).then_some(coords)
    }

    pub fn contains(&self, v: &CoordVector) -> bool {
        self.coords_of(v).is_some()
    }
}
