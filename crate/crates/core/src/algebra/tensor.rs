use crate::error::{Error, Result};
use crate::linalg::{solve_linear, CoordVector, Field, LinearMap, Scalar};

use super::BasedAlgebra;

/// An element of a tensor product `V_1 ⊗ … ⊗ V_n` in dense coordinates,
/// left factor major. Used for `Φ ∈ H⊗H⊗H`, `Φ_ρ ∈ B⊗H⊗H`, coactions and
/// every intermediate Sweedler-style expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    dims: Vec<usize>,
    coords: CoordVector,
}

impl TensorElement {
    pub fn new(dims: Vec<usize>, coords: CoordVector) -> Result<Self> {
        let n: usize = dims.iter().product();
        if coords.dim() != n {
            return Err(Error::dims(format!("tensor of shape {dims:?} needs {n} coordinates, got {}", coords.dim())));
        }
        Ok(Self { dims, coords })
    }

    pub fn zero(field: Field, dims: &[usize]) -> Self {
        Self {
            dims: dims.to_vec(),
            coords: CoordVector::zeros(field, dims.iter().product()),
        }
    }

    /// `v_1 ⊗ … ⊗ v_n`
    pub fn simple(parts: &[&CoordVector]) -> Self {
        let field = parts[0].field();
        let mut coords = CoordVector::from_scalars(field, vec![field.one()]);
        for p in parts {
            coords = coords.tensor(p);
        }
        Self {
            dims: parts.iter().map(|p| p.dim()).collect(),
            coords,
        }
    }

    /// `1 ⊗ … ⊗ 1` in `A_1 ⊗ … ⊗ A_n`.
    pub fn unit(algebras: &[&BasedAlgebra]) -> Self {
        let units: Vec<_> = algebras.iter().map(|a| a.unit()).collect();
        Self::simple(&units)
    }

    /// Sum of `c · e_{i_1} ⊗ … ⊗ e_{i_n}` over the given terms.
    pub fn from_terms(field: Field, dims: &[usize], terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> Result<Self> {
        let mut t = Self::zero(field, dims);
        for (idx, c) in terms {
            if idx.len() != dims.len() || idx.iter().zip(dims).any(|(i, d)| i >= d) {
                return Err(Error::InvalidInput(format!("tensor index {idx:?} out of range for shape {dims:?}")));
            }
            let flat = t.flat_index(&idx);
            *t.coords.get_mut(flat) += &c;
        }
        Ok(t)
    }

    pub fn field(&self) -> Field {
        self.coords.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coords(&self) -> &CoordVector {
        &self.coords
    }

    pub fn into_coords(self) -> CoordVector {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        flat_index(&self.dims, idx)
    }

    /// Nonzero coordinates as `(multi-index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.coords
            .nonzero()
            .map(move |(flat, c)| (multi_index(&self.dims, flat), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims);
        Self {
            dims: self.dims.clone(),
            coords: self.coords.add(&other.coords),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims);
        Self {
            dims: self.dims.clone(),
            coords: self.coords.sub(&other.coords),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            dims: self.dims.clone(),
            coords: self.coords.scale(c),
        }
    }

    /// `self += c · (v_1 ⊗ … ⊗ v_n)` without materializing the simple tensor.
    pub fn add_simple(&mut self, c: &Scalar, parts: &[&CoordVector]) {
        assert_eq!(parts.len(), self.dims.len());
        if c.is_zero() {
            return;
        }
        let sparse: Vec<Vec<(usize, &Scalar)>> = parts.iter().map(|p| p.nonzero().collect()).collect();
        let dims = self.dims.clone();
        for_each_product(&sparse, c.clone(), &mut |idx, coeff| {
            let flat = flat_index(&dims, idx);
            *self.coords.get_mut(flat) += &coeff;
        });
    }

    /// `self ⊗ other`
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            dims,
            coords: self.coords.tensor(&other.coords),
        }
    }

    /// Product in `A_1 ⊗ … ⊗ A_n` with componentwise multiplication.
    pub fn mul(&self, other: &Self, algebras: &[&BasedAlgebra]) -> Self {
        assert_eq!(self.dims, other.dims, "tensor shapes differ");
        assert_eq!(algebras.len(), self.dims.len(), "one algebra per leg");
        let coords = mul_slices(self.field(), self.coords.as_slice(), other.coords.as_slice(), algebras);
        Self {
            dims: self.dims.clone(),
            coords: CoordVector::from_scalars(self.field(), coords),
        }
    }

    /// Applies `map` to one leg, replacing it by `out_dims` legs
    /// (empty for a map into the ground field, two legs for a coproduct).
    pub fn map_leg(&self, leg: usize, map: &LinearMap, out_dims: &[usize]) -> Self {
        assert_eq!(map.src_dim(), self.dims[leg], "map_leg: source dim mismatch on leg {leg}");
        assert_eq!(map.dst_dim(), out_dims.iter().product::<usize>(), "map_leg: output shape mismatch");
        let mut dims = self.dims[..leg].to_vec();
        dims.extend_from_slice(out_dims);
        dims.extend_from_slice(&self.dims[leg + 1..]);
        let mut out = Self::zero(self.field(), &dims);
        let images: Vec<Vec<(usize, Scalar)>> = (0..map.src_dim())
            .map(|c| map.column(c).nonzero().map(|(r, v)| (r, v.clone())).collect())
            .collect();
        for (idx, c) in self.terms() {
            for (r, v) in &images[idx[leg]] {
                let sub = multi_index(out_dims, *r);
                let mut new_idx = idx[..leg].to_vec();
                new_idx.extend(sub);
                new_idx.extend_from_slice(&idx[leg + 1..]);
                let flat = flat_index(&dims, &new_idx);
                *out.coords.get_mut(flat) += &(c * v);
            }
        }
        out
    }

    /// Applies one map per leg (each map keeps its leg as a single leg).
    pub fn map_legs(&self, maps: &[&LinearMap]) -> Self {
        assert_eq!(maps.len(), self.dims.len());
        let mut t = self.clone();
        for (leg, m) in maps.iter().enumerate() {
            t = t.map_leg(leg, m, &[m.dst_dim()]);
        }
        t
    }

    /// Same coordinates read under another shape of equal total size.
    pub fn reshape(&self, dims: Vec<usize>) -> Self {
        assert_eq!(dims.iter().product::<usize>(), self.coords.dim());
        Self {
            dims,
            coords: self.coords.clone(),
        }
    }

    /// Two-sided inverse in `A_1 ⊗ … ⊗ A_n`, found by solving `x·y = 1`
    /// against the left-multiplication matrix and checking `y·x = 1`.
    pub fn inverse(&self, algebras: &[&BasedAlgebra]) -> Option<Self> {
        let n = self.coords.dim();
        let field = self.field();
        let columns: Vec<CoordVector> = (0..n)
            .map(|j| {
                let e = Self {
                    dims: self.dims.clone(),
                    coords: CoordVector::basis(field, n, j),
                };
                self.mul(&e, algebras).coords
            })
            .collect();
        let left = LinearMap::from_columns(field, n, &columns);
        let unit = Self::unit(algebras);
        let y = solve_linear(&left, &unit.coords).ok()??;
        let y = Self {
            dims: self.dims.clone(),
            coords: y,
        };
        (y.mul(self, algebras) == unit).then_some(y)
    }
}

pub(crate) fn flat_index(dims: &[usize], idx: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

pub(crate) fn multi_index(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for (slot, d) in idx.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    idx
}

/// Multiplies slice by slice along the first leg, so the first algebra's
/// structure constants are applied once per pair of slices.
fn mul_slices(field: Field, x: &[Scalar], y: &[Scalar], algebras: &[&BasedAlgebra]) -> Vec<Scalar> {
    let (first, rest) = algebras.split_first().expect("at least one leg");
    let d = first.dim();
    let r = x.len() / d;
    let mut out = vec![field.zero(); x.len()];
    let nonzero = |v: &[Scalar], i: usize| v[i * r..(i + 1) * r].iter().any(|c| !c.is_zero());
    let ys: Vec<usize> = (0..d).filter(|&j| nonzero(y, j)).collect();
    for i in (0..d).filter(|&i| nonzero(x, i)) {
        let xi = &x[i * r..(i + 1) * r];
        for &j in &ys {
            let yj = &y[j * r..(j + 1) * r];
            let prod = if rest.is_empty() {
                vec![&xi[0] * &yj[0]]
            } else {
                mul_slices(field, xi, yj, rest)
            };
            if prod.iter().all(Scalar::is_zero) {
                continue;
            }
            for (k, c) in first.basis_product(i, j) {
                for (slot, p) in out[k * r..(k + 1) * r].iter_mut().zip(&prod) {
                    if !p.is_zero() {
                        *slot += &(c * p);
                    }
                }
            }
        }
    }
    out
}

/// Calls `f(idx, coeff · Π c_leg)` for every choice of one sparse entry per leg.
fn for_each_product(factors: &[Vec<(usize, &Scalar)>], coeff: Scalar, f: &mut impl FnMut(&[usize], Scalar)) {
    fn go(
        factors: &[Vec<(usize, &Scalar)>],
        leg: usize,
        idx: &mut Vec<usize>,
        acc: Scalar,
        f: &mut impl FnMut(&[usize], Scalar),
    ) {
        if leg == factors.len() {
            f(idx, acc);
            return;
        }
        for (k, c) in &factors[leg] {
            idx.push(*k);
            go(factors, leg + 1, idx, &acc * *c, f);
            idx.pop();
        }
    }
    let mut idx = Vec::with_capacity(factors.len());
    go(factors, 0, &mut idx, coeff, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn index_round_trip() {
        let dims = [2, 3, 4];
        for flat in 0..24 {
            assert_eq!(flat_index(&dims, &multi_index(&dims, flat)), flat);
        }
        assert_eq!(flat_index(&dims, &[1, 0, 2]), 14);
    }

    #[test]
    fn simple_matches_add_simple() {
        let u = CoordVector::from_ints(Q, &[1, 2]);
        let v = CoordVector::from_ints(Q, &[0, 3, -1]);
        let s = TensorElement::simple(&[&u, &v]);
        let mut t = TensorElement::zero(Q, &[2, 3]);
        t.add_simple(&Q.int(2), &[&u, &v]);
        assert_eq!(t, s.scale(&Q.int(2)));
    }

    #[test]
    fn map_leg_with_counit_drops_a_leg() {
        let counit = LinearMap::from_int_rows(Q, &[&[1, 1]]);
        let t = TensorElement::simple(&[&CoordVector::from_ints(Q, &[1, 2]), &CoordVector::from_ints(Q, &[3, 4])]);
        let r = t.map_leg(0, &counit, &[]);
        assert_eq!(r.dims(), &[2]);
        assert_eq!(r.coords(), &CoordVector::from_ints(Q, &[9, 12]));
    }
}
