//! Quasi-bialgebras and quasi-Hopf algebras on a [`BasedAlgebra`].
//!
//! Tensor components of `Φ` are written `X¹⊗X²⊗X³` and those of `Φ⁻¹`
//! `x¹⊗x²⊗x³` in the comments below; in code they are simply the nonzero
//! terms of [`QuasiBialgebra::phi`] and [`QuasiBialgebra::phi_inv`].

mod pq;

use std::ops::Deref;

use crate::algebra::{convert_vector, BasedAlgebra, TensorElement};
use crate::error::{Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap, Scalar};
use crate::report::VerificationReport;

pub use pq::{compute_pq, lemma3_lhs, verify_lemma3, verify_pq_identities, PQElements};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiBialgebra {
    algebra: BasedAlgebra,
    comul: LinearMap,
    counit: LinearMap,
    phi: TensorElement,
    phi_inv: TensorElement,
}

impl QuasiBialgebra {
    /// `phi_inv` is computed when not supplied. A supplied inverse is kept
    /// as given and checked by [`verify_quasi_bialgebra`].
    pub fn new(
        algebra: BasedAlgebra,
        comul: LinearMap,
        counit: LinearMap,
        phi: TensorElement,
        phi_inv: Option<TensorElement>,
    ) -> Result<Self> {
        let d = algebra.dim();
        if comul.src_dim() != d || comul.dst_dim() != d * d {
            return Err(Error::dims(format!("coproduct must be {}x{d}", d * d)));
        }
        if counit.src_dim() != d || counit.dst_dim() != 1 {
            return Err(Error::dims(format!("counit must be 1x{d}")));
        }
        if phi.dims() != [d, d, d] {
            return Err(Error::dims(format!("reassociator must live in H⊗H⊗H, got shape {:?}", phi.dims())));
        }
        let phi_inv = match phi_inv {
            Some(inv) if inv.dims() != [d, d, d] => {
                return Err(Error::dims(format!("inverse reassociator has shape {:?}", inv.dims())))
            }
            Some(inv) => inv,
            None => phi
                .inverse(&[&algebra, &algebra, &algebra])
                .ok_or(Error::NotInvertible)?,
        };
        Ok(Self {
            algebra,
            comul,
            counit,
            phi,
            phi_inv,
        })
    }

    pub fn algebra(&self) -> &BasedAlgebra {
        &self.algebra
    }

    pub fn comul(&self) -> &LinearMap {
        &self.comul
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn phi(&self) -> &TensorElement {
        &self.phi
    }

    pub fn phi_inv(&self) -> &TensorElement {
        &self.phi_inv
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn one(&self) -> &CoordVector {
        self.algebra.unit()
    }

    pub fn basis(&self, i: usize) -> CoordVector {
        self.algebra.basis(i)
    }

    pub fn mul(&self, x: &CoordVector, y: &CoordVector) -> CoordVector {
        self.algebra.mul(x, y)
    }

    pub fn product(&self, factors: &[&CoordVector]) -> CoordVector {
        self.algebra.product(factors)
    }

    /// `Δ(x)` as an element of `H⊗H`.
    pub fn comultiply(&self, x: &CoordVector) -> TensorElement {
        let d = self.dim();
        TensorElement::new(vec![d, d], self.comul.apply(x)).expect("coproduct shape")
    }

    pub fn counit_of(&self, x: &CoordVector) -> Scalar {
        self.counit.apply(x)[0].clone()
    }

    /// `Δ` applied to one leg of a tensor whose legs all live in `H`.
    pub fn comul_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        let d = self.dim();
        t.map_leg(leg, &self.comul, &[d, d])
    }

    /// `ε` applied to one leg, removing it.
    pub fn counit_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        t.map_leg(leg, &self.counit, &[])
    }

    /// `[H, H, …, H]` for tensor multiplication with `n` legs.
    pub fn legs(&self, n: usize) -> Vec<&BasedAlgebra> {
        vec![&self.algebra; n]
    }

    /// `1⊗…⊗1` with `n` legs.
    pub fn unit_tensor(&self, n: usize) -> TensorElement {
        TensorElement::unit(&self.legs(n))
    }

    pub fn convert(&self, field: Field, map: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(Self {
            algebra: self.algebra.convert(field, &map)?,
            comul: convert_map(&self.comul, field, &map)?,
            counit: convert_map(&self.counit, field, &map)?,
            phi: convert_tensor(&self.phi, field, &map)?,
            phi_inv: convert_tensor(&self.phi_inv, field, &map)?,
        })
    }
}

pub(crate) fn convert_map(m: &LinearMap, field: Field, map: &impl Fn(&Scalar) -> Result<Scalar>) -> Result<LinearMap> {
    let entries = m.entries().iter().map(map).collect::<Result<Vec<_>>>()?;
    LinearMap::from_row_major(field, m.dst_dim(), m.src_dim(), entries)
}

pub(crate) fn convert_tensor(
    t: &TensorElement,
    field: Field,
    map: &impl Fn(&Scalar) -> Result<Scalar>,
) -> Result<TensorElement> {
    TensorElement::new(t.dims().to_vec(), convert_vector(t.coords(), field, map)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHopfAlgebra {
    base: QuasiBialgebra,
    antipode: LinearMap,
    antipode_inv: Option<LinearMap>,
    alpha: CoordVector,
    beta: CoordVector,
}

impl QuasiHopfAlgebra {
    /// When `antipode_inv` is `None` it is computed from `antipode`; a
    /// singular antipode leaves it unset (reported by [`verify_quasi_hopf`]).
    pub fn new(
        base: QuasiBialgebra,
        antipode: LinearMap,
        antipode_inv: Option<LinearMap>,
        alpha: CoordVector,
        beta: CoordVector,
    ) -> Result<Self> {
        let d = base.dim();
        if antipode.src_dim() != d || antipode.dst_dim() != d {
            return Err(Error::dims(format!("antipode must be {d}x{d}")));
        }
        if let Some(inv) = &antipode_inv {
            if inv.src_dim() != d || inv.dst_dim() != d {
                return Err(Error::dims(format!("inverse antipode must be {d}x{d}")));
            }
        }
        if alpha.dim() != d || beta.dim() != d {
            return Err(Error::dims("alpha and beta must be elements of H"));
        }
        let antipode_inv = antipode_inv.or_else(|| antipode.inverse());
        Ok(Self {
            base,
            antipode,
            antipode_inv,
            alpha,
            beta,
        })
    }

    pub fn base(&self) -> &QuasiBialgebra {
        &self.base
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> Option<&LinearMap> {
        self.antipode_inv.as_ref()
    }

    pub fn alpha(&self) -> &CoordVector {
        &self.alpha
    }

    pub fn beta(&self) -> &CoordVector {
        &self.beta
    }

    pub fn s(&self, x: &CoordVector) -> CoordVector {
        self.antipode.apply(x)
    }

    pub fn s_inv(&self, x: &CoordVector) -> Result<CoordVector> {
        Ok(self.antipode_inv.as_ref().ok_or(Error::NotInvertible)?.apply(x))
    }

    pub fn convert(&self, field: Field, map: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(Self {
            base: self.base.convert(field, &map)?,
            antipode: convert_map(&self.antipode, field, &map)?,
            antipode_inv: self
                .antipode_inv
                .as_ref()
                .map(|m| convert_map(m, field, &map))
                .transpose()?,
            alpha: convert_vector(&self.alpha, field, &map)?,
            beta: convert_vector(&self.beta, field, &map)?,
        })
    }

    /// Copy of the structure with `α` and `β` replaced.
    pub fn with_alpha_beta(&self, alpha: CoordVector, beta: CoordVector) -> Self {
        Self {
            alpha,
            beta,
            ..self.clone()
        }
    }
}

impl Deref for QuasiHopfAlgebra {
    type Target = QuasiBialgebra;

    fn deref(&self) -> &QuasiBialgebra {
        &self.base
    }
}

/// Checks `Δ`, `ε` are algebra maps, `Φ⁻¹` is a two-sided inverse, and
/// (q1)–(q4) together with the consequence (q7).
pub fn verify_quasi_bialgebra(h: &QuasiBialgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let d = h.dim();
    let two = h.legs(2);
    let three = h.legs(3);
    let basis: Vec<_> = (0..d).map(|i| h.basis(i)).collect();
    let k_one = CoordVector::basis(h.field(), 1, 0);

    report.check("(comul-alg)", &[], h.comultiply(h.one()).coords(), h.unit_tensor(2).coords());
    report.check(
        "(counit-alg)",
        &[],
        &CoordVector::from_scalars(h.field(), vec![h.counit_of(h.one())]),
        &k_one,
    );
    for i in 0..d {
        for j in 0..d {
            let ij = h.mul(&basis[i], &basis[j]);
            let lhs = h.comultiply(&ij);
            let rhs = h.comultiply(&basis[i]).mul(&h.comultiply(&basis[j]), &two);
            report.check("(comul-alg)", &[i, j], lhs.coords(), rhs.coords());
            let lhs = CoordVector::from_scalars(h.field(), vec![h.counit_of(&ij)]);
            let rhs = CoordVector::from_scalars(h.field(), vec![h.counit_of(&basis[i]) * h.counit_of(&basis[j])]);
            report.check("(counit-alg)", &[i, j], &lhs, &rhs);
        }
    }

    let unit3 = h.unit_tensor(3);
    report.check("(phi-inv)", &[0], h.phi().mul(h.phi_inv(), &three).coords(), unit3.coords());
    report.check("(phi-inv)", &[1], h.phi_inv().mul(h.phi(), &three).coords(), unit3.coords());

    // (q1): (id⊗Δ)Δ(h) = Φ (Δ⊗id)Δ(h) Φ⁻¹
    for (i, b) in basis.iter().enumerate() {
        let delta = h.comultiply(b);
        let lhs = h.comul_leg(&delta, 1);
        let rhs = h.phi().mul(&h.comul_leg(&delta, 0), &three).mul(h.phi_inv(), &three);
        report.check("(q1)", &[i], lhs.coords(), rhs.coords());
    }

    // (q2): (id⊗ε)Δ(h) = h = (ε⊗id)Δ(h)
    for (i, b) in basis.iter().enumerate() {
        let delta = h.comultiply(b);
        report.check("(q2)", &[i, 0], h.counit_leg(&delta, 1).coords(), b);
        report.check("(q2)", &[i, 1], h.counit_leg(&delta, 0).coords(), b);
    }

    // (q3): (1⊗Φ)(id⊗Δ⊗id)(Φ)(Φ⊗1) = (id⊗id⊗Δ)(Φ)(Δ⊗id⊗id)(Φ)
    let four = h.legs(4);
    let one = TensorElement::simple(&[h.one()]);
    let lhs = one
        .tensor(h.phi())
        .mul(&h.comul_leg(h.phi(), 1), &four)
        .mul(&h.phi().tensor(&one), &four);
    let rhs = h.comul_leg(h.phi(), 2).mul(&h.comul_leg(h.phi(), 0), &four);
    report.check("(q3)", &[], lhs.coords(), rhs.coords());

    // (q4) and its consequence (q7)
    let unit2 = h.unit_tensor(2);
    report.check("(q4)", &[], h.counit_leg(h.phi(), 1).coords(), unit2.coords());
    report.check("(q7)", &[0], h.counit_leg(h.phi(), 0).coords(), unit2.coords());
    report.check("(q7)", &[2], h.counit_leg(h.phi(), 2).coords(), unit2.coords());
    report
}

/// Checks `S` is an invertible anti-automorphism, (q5), (q6) and the
/// normalization `ε(α) = ε(β) = 1`, `ε∘S = ε`.
pub fn verify_quasi_hopf(h: &QuasiHopfAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let d = h.dim();
    let field = h.field();
    let basis: Vec<_> = (0..d).map(|i| h.basis(i)).collect();

    report.check("(antipode-anti)", &[], &h.s(h.one()), h.one());
    for i in 0..d {
        for j in 0..d {
            let lhs = h.s(&h.mul(&basis[i], &basis[j]));
            let rhs = h.mul(&h.s(&basis[j]), &h.s(&basis[i]));
            report.check("(antipode-anti)", &[i, j], &lhs, &rhs);
        }
    }
    match h.antipode_inv() {
        Some(inv) => {
            let id = LinearMap::identity(field, d);
            report.check("(antipode-inv)", &[0], &flat(&h.antipode().compose(inv)), &flat(&id));
            report.check("(antipode-inv)", &[1], &flat(&inv.compose(h.antipode())), &flat(&id));
        }
        None => report.fail(
            "(antipode-inv)",
            &[],
            CoordVector::from_ints(field, &[h.antipode().rank() as i64]),
            CoordVector::from_ints(field, &[d as i64]),
        ),
    }

    // (q5): S(h₁)αh₂ = ε(h)α and h₁βS(h₂) = ε(h)β
    for (i, b) in basis.iter().enumerate() {
        let mut left = CoordVector::zeros(field, d);
        let mut right = CoordVector::zeros(field, d);
        for (idx, c) in h.comultiply(b).terms() {
            let (h1, h2) = (&basis[idx[0]], &basis[idx[1]]);
            left.add_scaled(c, &h.product(&[&h.s(h1), h.alpha(), h2]));
            right.add_scaled(c, &h.product(&[h1, h.beta(), &h.s(h2)]));
        }
        let eps = h.counit_of(b);
        report.check("(q5)", &[i, 0], &left, &h.alpha().scale(&eps));
        report.check("(q5)", &[i, 1], &right, &h.beta().scale(&eps));
    }

    // (q6): X¹βS(X²)αX³ = 1 and S(x¹)αx²βS(x³) = 1
    let mut first = CoordVector::zeros(field, d);
    for (idx, c) in h.phi().terms() {
        let x = [&basis[idx[0]], &basis[idx[1]], &basis[idx[2]]];
        first.add_scaled(c, &h.product(&[x[0], h.beta(), &h.s(x[1]), h.alpha(), x[2]]));
    }
    let mut second = CoordVector::zeros(field, d);
    for (idx, c) in h.phi_inv().terms() {
        let x = [&basis[idx[0]], &basis[idx[1]], &basis[idx[2]]];
        second.add_scaled(c, &h.product(&[&h.s(x[0]), h.alpha(), x[1], h.beta(), &h.s(x[2])]));
    }
    report.check("(q6)", &[0], &first, h.one());
    report.check("(q6)", &[1], &second, h.one());

    let k_one = CoordVector::basis(field, 1, 0);
    let eps_vec = |x: &CoordVector| CoordVector::from_scalars(field, vec![h.counit_of(x)]);
    report.check("(norm)", &[0], &eps_vec(h.alpha()), &k_one);
    report.check("(norm)", &[1], &eps_vec(h.beta()), &k_one);
    for (i, b) in basis.iter().enumerate() {
        report.check("(norm)", &[2, i], &eps_vec(&h.s(b)), &eps_vec(b));
    }
    report
}

fn flat(m: &LinearMap) -> CoordVector {
    CoordVector::from_scalars(m.field(), m.entries().to_vec())
}

/// Rescales to `α' = ε(β)α`, `β' = ε(α)β`, so that `ε(α') = ε(β') = 1`.
pub fn normalize_alpha_beta(h: &QuasiHopfAlgebra) -> Result<QuasiHopfAlgebra> {
    let ea = h.counit_of(h.alpha());
    let eb = h.counit_of(h.beta());
    if !(&ea * &eb).is_one() {
        return Err(Error::Precondition(format!(
            "ε(α)ε(β) = {} but quasi-Hopf axioms force 1",
            &ea * &eb
        )));
    }
    Ok(h.with_alpha_beta(h.alpha().scale(&eb), h.beta().scale(&ea)))
}

/// Convenience: every quasi-bialgebra and quasi-Hopf check in one report.
pub fn verify_all(h: &QuasiHopfAlgebra) -> VerificationReport {
    let mut report = crate::algebra::verify_associative_unital(h.algebra());
    report.merge(verify_quasi_bialgebra(h.base()));
    report.merge(verify_quasi_hopf(h));
    report
}
