use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap, Scalar};
use crate::report::VerificationReport;

/// Sparse product of two basis vectors: `(k, c)` pairs with nonzero `c`.
pub(crate) type SparseProduct = Vec<(usize, Scalar)>;

/// A finite-dimensional algebra presented by structure constants
/// `e_i · e_j = Σ_k c[i][j][k] e_k` on a labeled basis.
///
/// Construction does not check associativity; call
/// [`verify_associative_unital`] for that. Module algebras reuse this type for
/// their (generally non-associative) multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedAlgebra {
    field: Field,
    labels: Vec<String>,
    table: Vec<SparseProduct>,
    unit: CoordVector,
}

impl BasedAlgebra {
    /// Builds an algebra from `(i, j, k, c)` triples; repeated triples add up.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: CoordVector,
    ) -> Result<Self> {
        let dim = labels.len();
        validate_labels(&labels)?;
        if unit.dim() != dim {
            return Err(Error::dims(format!("unit has dim {} but algebra has dim {dim}", unit.dim())));
        }
        let mut dense = vec![CoordVector::zeros(field, dim); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dim {dim}"
                )));
            }
            *dense[i * dim + j].get_mut(k) += &c;
        }
        Ok(Self::from_products(field, labels, dense, unit))
    }

    /// Builds an algebra from the products `e_i · e_j`, given densely.
    pub fn from_fn(
        field: Field,
        labels: Vec<String>,
        mut product: impl FnMut(usize, usize) -> CoordVector,
        unit: CoordVector,
    ) -> Result<Self> {
        let dim = labels.len();
        validate_labels(&labels)?;
        if unit.dim() != dim {
            return Err(Error::dims(format!("unit has dim {} but algebra has dim {dim}", unit.dim())));
        }
        let mut dense = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                if p.dim() != dim {
                    return Err(Error::dims(format!("product e_{i} e_{j} has dim {}", p.dim())));
                }
                dense.push(p);
            }
        }
        Ok(Self::from_products(field, labels, dense, unit))
    }

    fn from_products(field: Field, labels: Vec<String>, dense: Vec<CoordVector>, unit: CoordVector) -> Self {
        let table = dense
            .into_iter()
            .map(|v| v.nonzero().map(|(k, c)| (k, c.clone())).collect())
            .collect();
        Self {
            field,
            labels,
            table,
            unit,
        }
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: Field) -> Self {
        Self::new(
            field,
            vec!["1".into()],
            [(0, 0, 0, field.one())],
            CoordVector::basis(field, 1, 0),
        )
        .expect("ground field algebra is well formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &CoordVector {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> CoordVector {
        CoordVector::basis(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> CoordVector {
        CoordVector::zeros(self.field, self.dim())
    }

    /// Nonzero structure constants, ordered by `(i, j, k)`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let dim = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, prod)| prod.iter().map(move |(k, c)| (ij / dim, ij % dim, *k, c)))
    }

    pub(crate) fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &CoordVector, y: &CoordVector) -> CoordVector {
        assert_eq!(x.dim(), self.dim());
        assert_eq!(y.dim(), self.dim());
        let mut out = self.zero();
        let ys: Vec<_> = y.nonzero().collect();
        for (i, a) in x.nonzero() {
            for &(j, b) in &ys {
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    *out.get_mut(*k) += &(&ab * c);
                }
            }
        }
        out
    }

    /// Left-to-right product of the factors; the unit for an empty list.
    pub fn product(&self, factors: &[&CoordVector]) -> CoordVector {
        match factors.split_first() {
            None => self.unit.clone(),
            Some((first, rest)) => rest.iter().fold((*first).clone(), |acc, f| self.mul(&acc, f)),
        }
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_matrix(&self, x: &CoordVector) -> LinearMap {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(x, &self.basis(j))).collect();
        LinearMap::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of the bilinear product, `dim × dim²`, column `i*dim + j` = `e_i e_j`.
    pub fn mult_matrix(&self) -> LinearMap {
        let d = self.dim();
        let mut m = LinearMap::zeros(self.field, d, d * d);
        for (ij, prod) in self.table.iter().enumerate() {
            for (k, c) in prod {
                m.set(*k, ij, c.clone());
            }
        }
        m
    }

    /// Two-sided inverse of `x`: solves `x·y = 1` then confirms `y·x = 1`.
    pub fn inverse(&self, x: &CoordVector) -> Option<CoordVector> {
        let y = crate::linalg::solve_linear(&self.left_mult_matrix(x), &self.unit).ok()??;
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    /// Same algebra with structure constants moved into another field.
    pub fn convert(&self, field: Field, map: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let constants = self
            .structure_constants()
            .map(|(i, j, k, c)| Ok((i, j, k, map(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let unit = convert_vector(&self.unit, field, &map)?;
        Self::new(field, self.labels.clone(), constants, unit)
    }
}

pub(crate) fn convert_vector(
    v: &CoordVector,
    field: Field,
    map: &impl Fn(&Scalar) -> Result<Scalar>,
) -> Result<CoordVector> {
    Ok(CoordVector::from_scalars(field, v.iter().map(map).collect::<Result<_>>()?))
}

fn validate_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::InvalidInput("algebras must have positive dimension".into()));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::InvalidInput(format!("duplicate basis label {l:?}")));
        }
    }
    Ok(())
}

/// An element together with the algebra it lives in.
#[derive(Clone, Debug)]
pub struct AlgebraElement<'a> {
    algebra: &'a BasedAlgebra,
    coords: CoordVector,
}

impl<'a> AlgebraElement<'a> {
    pub fn new(algebra: &'a BasedAlgebra, coords: CoordVector) -> Result<Self> {
        if coords.dim() != algebra.dim() {
            return Err(Error::dims(format!(
                "element has dim {} but algebra has dim {}",
                coords.dim(),
                algebra.dim()
            )));
        }
        Ok(Self { algebra, coords })
    }

    pub fn unit(algebra: &'a BasedAlgebra) -> Self {
        Self {
            algebra,
            coords: algebra.unit().clone(),
        }
    }

    pub fn algebra(&self) -> &'a BasedAlgebra {
        self.algebra
    }

    pub fn coords(&self) -> &CoordVector {
        &self.coords
    }

    fn same_algebra(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) || self.algebra == other.algebra
    }
}

impl PartialEq for AlgebraElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coords == other.coords
    }
}

pub fn multiply<'a>(x: &AlgebraElement<'a>, y: &AlgebraElement<'a>) -> Result<AlgebraElement<'a>> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(AlgebraElement {
        algebra: x.algebra,
        coords: x.algebra.mul(&x.coords, &y.coords),
    })
}

pub fn invert_element<'a>(x: &AlgebraElement<'a>) -> Result<AlgebraElement<'a>> {
    let coords = x.algebra.inverse(&x.coords).ok_or(Error::NotInvertible)?;
    Ok(AlgebraElement {
        algebra: x.algebra,
        coords,
    })
}

/// Checks `(e_i e_j) e_k = e_i (e_j e_k)` on every basis triple and
/// `1·e_i = e_i = e_i·1` on every basis vector.
pub fn verify_associative_unital(a: &BasedAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let d = a.dim();
    let basis: Vec<_> = (0..d).map(|i| a.basis(i)).collect();
    for i in 0..d {
        report.check("(unit)", &[i, 0], &a.mul(a.unit(), &basis[i]), &basis[i]);
        report.check("(unit)", &[i, 1], &a.mul(&basis[i], a.unit()), &basis[i]);
    }
    for i in 0..d {
        for j in 0..d {
            let ij = a.mul(&basis[i], &basis[j]);
            for k in 0..d {
                let lhs = a.mul(&ij, &basis[k]);
                let rhs = a.mul(&basis[i], &a.mul(&basis[j], &basis[k]));
                report.check("(assoc)", &[i, j, k], &lhs, &rhs);
            }
        }
    }
    report
}

/// The algebra `A ⊗ B` with componentwise product; basis pairs in
/// lexicographic order, labels `"a⊗b"`.
pub fn tensor_algebra(a: &BasedAlgebra, b: &BasedAlgebra) -> BasedAlgebra {
    let field = a.field();
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("{la}⊗{lb}")))
        .collect();
    let db = b.dim();
    let mut constants = Vec::new();
    for i1 in 0..a.dim() {
        for j1 in 0..a.dim() {
            for (k1, c1) in a.basis_product(i1, j1) {
                for i2 in 0..db {
                    for j2 in 0..db {
                        for (k2, c2) in b.basis_product(i2, j2) {
                            constants.push((i1 * db + i2, j1 * db + j2, k1 * db + k2, c1 * c2));
                        }
                    }
                }
            }
        }
    }
    BasedAlgebra::new(field, labels, constants, a.unit().tensor(b.unit())).expect("tensor of well-formed algebras")
}

/// Checks that `f: A → B` is unital and multiplicative on basis pairs.
pub fn check_algebra_morphism(f: &LinearMap, a: &BasedAlgebra, b: &BasedAlgebra) -> Result<VerificationReport> {
    if f.src_dim() != a.dim() || f.dst_dim() != b.dim() {
        return Err(Error::dims(format!(
            "map is {}x{} but algebras have dims {} -> {}",
            f.dst_dim(),
            f.src_dim(),
            a.dim(),
            b.dim()
        )));
    }
    let mut report = VerificationReport::new();
    report.check("(morphism-unit)", &[], &f.apply(a.unit()), b.unit());
    let images: Vec<_> = (0..a.dim()).map(|i| f.column(i)).collect();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(&a.mul(&a.basis(i), &a.basis(j)));
            let rhs = b.mul(&images[i], &images[j]);
            report.check("(morphism-mult)", &[i, j], &lhs, &rhs);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn z2(field: Field) -> BasedAlgebra {
        BasedAlgebra::new(
            field,
            vec!["1".into(), "g".into()],
            [
                (0, 0, 0, field.one()),
                (0, 1, 1, field.one()),
                (1, 0, 1, field.one()),
                (1, 1, 0, field.one()),
            ],
            CoordVector::basis(field, 2, 0),
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_relation() {
        let a = z2(Q);
        let g = AlgebraElement::new(&a, a.basis(1)).unwrap();
        assert_eq!(multiply(&g, &g).unwrap(), AlgebraElement::unit(&a));
        let one = AlgebraElement::unit(&a);
        assert_eq!(multiply(&one, &g).unwrap(), g);
    }

    #[test]
    fn idempotent_of_z2() {
        // p = (1 - g)/2; p² = (1 - 2g + g²)/4 = (2 - 2g)/4 = p
        let a = z2(Q);
        let half = Q.ratio(1, 2).unwrap();
        let p = CoordVector::from_scalars(Q, vec![half.clone(), -half]);
        assert_eq!(a.mul(&p, &p), p);
    }

    fn z3(field: Field) -> BasedAlgebra {
        BasedAlgebra::new(
            field,
            vec!["1".into(), "g".into(), "g2".into()],
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j, (i + j) % 3, field.one()))),
            CoordVector::basis(field, 3, 0),
        )
        .unwrap()
    }

    #[test]
    fn associativity_perturbation_is_caught() {
        // Every unital 2-dim algebra is associative, so perturb k[Z/3].
        let a = z3(Q);
        assert!(verify_associative_unital(&a).passed());
        let mut consts: Vec<_> = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        consts.push((1, 1, 0, Q.one()));
        let bad = BasedAlgebra::new(Q, a.labels().to_vec(), consts, a.unit().clone()).unwrap();
        let report = verify_associative_unital(&bad);
        assert!(report.violates("(assoc)"));
        assert!(!report.violates("(unit)"));
        assert!(report.violations().iter().all(|v| v.witness.len() == 3));
    }

    #[test]
    fn tensor_with_ground_field() {
        let a = z2(Q);
        let k = BasedAlgebra::ground(Q);
        let t = tensor_algebra(&k, &a);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.structure_constants().count(), a.structure_constants().count());
        let aa = tensor_algebra(&a, &a);
        assert_eq!(aa.dim(), 4);
        assert_eq!(aa.unit(), &CoordVector::basis(Q, 4, 0));
        assert!(verify_associative_unital(&aa).passed());
    }

    #[test]
    fn inversion() {
        let a = z2(Q);
        let one = AlgebraElement::unit(&a);
        assert_eq!(invert_element(&one).unwrap(), one);
        let zero = AlgebraElement::new(&a, a.zero()).unwrap();
        assert!(matches!(invert_element(&zero), Err(Error::NotInvertible)));
        // 1 + g is a zero divisor in k[Z/2]
        let zd = AlgebraElement::new(&a, CoordVector::from_ints(Q, &[1, 1])).unwrap();
        assert!(invert_element(&zd).is_err());
        let x = AlgebraElement::new(&a, CoordVector::from_ints(Q, &[2, 1])).unwrap();
        let y = invert_element(&x).unwrap();
        assert_eq!(invert_element(&y).unwrap(), x);
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = z2(Q);
        let k = BasedAlgebra::ground(Q);
        let x = AlgebraElement::unit(&a);
        let y = AlgebraElement::unit(&k);
        assert!(matches!(multiply(&x, &y), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn characters_of_z2() {
        let a = z2(Q);
        let k = BasedAlgebra::ground(Q);
        let counit = LinearMap::from_int_rows(Q, &[&[1, 1]]);
        let sign = LinearMap::from_int_rows(Q, &[&[1, -1]]);
        assert!(check_algebra_morphism(&counit, &a, &k).unwrap().passed());
        assert!(check_algebra_morphism(&sign, &a, &k).unwrap().passed());
        assert!(check_algebra_morphism(&LinearMap::identity(Q, 2), &a, &a).unwrap().passed());
        let bad = LinearMap::from_int_rows(Q, &[&[1, 2]]);
        assert!(check_algebra_morphism(&bad, &a, &k).unwrap().violates("(morphism-mult)"));
        assert!(check_algebra_morphism(&LinearMap::identity(Q, 3), &a, &k).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(BasedAlgebra::new(Q, vec![], [], CoordVector::zeros(Q, 0)).is_err());
        assert!(BasedAlgebra::new(Q, vec!["a".into(), "a".into()], [], CoordVector::zeros(Q, 2)).is_err());
        assert!(BasedAlgebra::new(Q, vec!["a".into()], [(0, 0, 1, Q.one())], CoordVector::basis(Q, 1, 0)).is_err());
    }
}
