//! Module algebras, comodule algebras, smash products and the `B^v`
//! construction over a fixed quasi-Hopf algebra.

mod bv;
mod smash;

use std::sync::Arc;

use crate::algebra::{check_algebra_morphism, BasedAlgebra, TensorElement};
use crate::error::{Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap};
use crate::quasi_hopf::QuasiHopfAlgebra;
use crate::report::VerificationReport;

pub use bv::{bv_construction, i0_map};
pub use smash::{lemma1_check, smash_algebra, smash_product, Lemma1Outcome};

/// A left `H`-module `V` with action `h ⊗ v ↦ h·v`, stored as a
/// `dim V × (dim H · dim V)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    hopf: Arc<QuasiHopfAlgebra>,
    labels: Vec<String>,
    action: LinearMap,
    // action matrix of each basis element of H
    basis_actions: Vec<LinearMap>,
}

impl LeftModule {
    pub fn new(hopf: Arc<QuasiHopfAlgebra>, labels: Vec<String>, action: LinearMap) -> Result<Self> {
        let (dh, dv) = (hopf.dim(), labels.len());
        if dv == 0 {
            return Err(Error::InvalidInput("modules must have positive dimension".into()));
        }
        if action.dst_dim() != dv || action.src_dim() != dh * dv {
            return Err(Error::dims(format!("action must be {dv}x{}", dh * dv)));
        }
        let basis_actions = (0..dh)
            .map(|h| LinearMap::from_fn(hopf.field(), dv, dv, |r, c| action.get(r, h * dv + c).clone()))
            .collect();
        Ok(Self {
            hopf,
            labels,
            action,
            basis_actions,
        })
    }

    /// The ground field with `h·1 = ε(h)1`.
    pub fn trivial(hopf: Arc<QuasiHopfAlgebra>) -> Self {
        let action = hopf.counit().clone();
        Self::new(hopf, vec!["1".into()], action).expect("counit action")
    }

    pub fn hopf(&self) -> &Arc<QuasiHopfAlgebra> {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn action(&self) -> &LinearMap {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.hopf.field()
    }

    /// Matrix of `v ↦ e_h · v`.
    pub fn basis_action(&self, h: usize) -> &LinearMap {
        &self.basis_actions[h]
    }

    pub fn act(&self, h: &CoordVector, v: &CoordVector) -> CoordVector {
        let mut out = CoordVector::zeros(self.field(), self.dim());
        for (i, c) in h.nonzero() {
            out.add_scaled(c, &self.basis_actions[i].apply(v));
        }
        out
    }

    /// Matrix of `v ↦ h · v`.
    pub fn action_matrix(&self, h: &CoordVector) -> LinearMap {
        let mut m = LinearMap::zeros(self.field(), self.dim(), self.dim());
        for (i, c) in h.nonzero() {
            m = m.add(&self.basis_actions[i].scale(c));
        }
        m
    }
}

/// Unitality and associativity of the action on basis elements.
pub fn verify_left_module(m: &LeftModule) -> VerificationReport {
    let mut report = VerificationReport::new();
    let h = m.hopf();
    let id = LinearMap::identity(m.field(), m.dim());
    report.check("(module)", &[], &flat(&m.action_matrix(h.one())), &flat(&id));
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let lhs = m.action_matrix(&h.mul(&h.basis(i), &h.basis(j)));
            let rhs = m.basis_action(i).compose(m.basis_action(j));
            report.check("(module)", &[i, j], &flat(&lhs), &flat(&rhs));
        }
    }
    report
}

pub(crate) fn flat(m: &LinearMap) -> CoordVector {
    CoordVector::from_scalars(m.field(), m.entries().to_vec())
}

/// A left `H`-module algebra: a module with a unital multiplication that is
/// associative only up to `Φ` (axiom (ma1)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAlgebra {
    module: LeftModule,
    carrier: BasedAlgebra,
}

impl ModuleAlgebra {
    /// `carrier` holds the multiplication table and unit; it need not be
    /// associative.
    pub fn new(hopf: Arc<QuasiHopfAlgebra>, carrier: BasedAlgebra, action: LinearMap) -> Result<Self> {
        if carrier.field() != hopf.field() {
            return Err(Error::InvalidInput("module algebra and H live over different fields".into()));
        }
        let module = LeftModule::new(hopf, carrier.labels().to_vec(), action)?;
        Ok(Self { module, carrier })
    }

    /// `A = k` with `h·1 = ε(h)1`.
    pub fn trivial(hopf: Arc<QuasiHopfAlgebra>) -> Self {
        let carrier = BasedAlgebra::ground(hopf.field());
        Self {
            module: LeftModule::trivial(hopf),
            carrier,
        }
    }

    pub fn hopf(&self) -> &Arc<QuasiHopfAlgebra> {
        self.module.hopf()
    }

    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn carrier(&self) -> &BasedAlgebra {
        &self.carrier
    }

    pub fn action(&self) -> &LinearMap {
        self.module.action()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn mul(&self, a: &CoordVector, b: &CoordVector) -> CoordVector {
        self.carrier.mul(a, b)
    }

    pub fn act(&self, h: &CoordVector, a: &CoordVector) -> CoordVector {
        self.module.act(h, a)
    }

    pub fn unit(&self) -> &CoordVector {
        self.carrier.unit()
    }

    pub fn with_carrier(&self, carrier: BasedAlgebra) -> Result<Self> {
        Self::new(self.hopf().clone(), carrier, self.action().clone())
    }
}

/// `(aa')a'' = (X¹·a)[(X²·a')(X³·a'')]` on every basis triple.
pub(crate) fn check_ma1(ma: &ModuleAlgebra, report: &mut VerificationReport) {
    report.touch("(ma1)");
    let h = ma.hopf();
    let d = ma.dim();
    let basis: Vec<_> = (0..d).map(|i| ma.carrier().basis(i)).collect();
    let phi: Vec<_> = h.phi().terms().map(|(i, c)| (i, c.clone())).collect();
    for i in 0..d {
        for j in 0..d {
            let ij = ma.mul(&basis[i], &basis[j]);
            for k in 0..d {
                let lhs = ma.mul(&ij, &basis[k]);
                let mut rhs = CoordVector::zeros(ma.field(), d);
                for (x, c) in &phi {
                    let a = ma.module().basis_action(x[0]).apply(&basis[i]);
                    let b = ma.module().basis_action(x[1]).apply(&basis[j]);
                    let cc = ma.module().basis_action(x[2]).apply(&basis[k]);
                    rhs.add_scaled(c, &ma.mul(&a, &ma.mul(&b, &cc)));
                }
                report.check("(ma1)", &[i, j, k], &lhs, &rhs);
            }
        }
    }
}

/// `h·(aa') = (h₁·a)(h₂·a')` for basis `h, a, a'`.
pub(crate) fn check_ma2(ma: &ModuleAlgebra, report: &mut VerificationReport) {
    report.touch("(ma2)");
    let h = ma.hopf();
    let d = ma.dim();
    let basis: Vec<_> = (0..d).map(|i| ma.carrier().basis(i)).collect();
    for hi in 0..h.dim() {
        let delta: Vec<_> = h.comultiply(&h.basis(hi)).terms().map(|(i, c)| (i, c.clone())).collect();
        for i in 0..d {
            for j in 0..d {
                let lhs = ma.module().basis_action(hi).apply(&ma.mul(&basis[i], &basis[j]));
                let mut rhs = CoordVector::zeros(ma.field(), d);
                for (idx, c) in &delta {
                    let a = ma.module().basis_action(idx[0]).apply(&basis[i]);
                    let b = ma.module().basis_action(idx[1]).apply(&basis[j]);
                    rhs.add_scaled(c, &ma.mul(&a, &b));
                }
                report.check("(ma2)", &[hi, i, j], &lhs, &rhs);
            }
        }
    }
}

/// `h·1_A = ε(h)1_A`
pub(crate) fn check_ma3(ma: &ModuleAlgebra, report: &mut VerificationReport) {
    let h = ma.hopf();
    for hi in 0..h.dim() {
        let lhs = ma.module().basis_action(hi).apply(ma.unit());
        let rhs = ma.unit().scale(&h.counit_of(&h.basis(hi)));
        report.check("(ma3)", &[hi], &lhs, &rhs);
    }
}

pub(crate) fn check_unit(ma: &ModuleAlgebra, report: &mut VerificationReport) {
    for i in 0..ma.dim() {
        let b = ma.carrier().basis(i);
        report.check("(unit)", &[i, 0], &ma.mul(ma.unit(), &b), &b);
        report.check("(unit)", &[i, 1], &ma.mul(&b, ma.unit()), &b);
    }
}

/// Module axioms, unit, and (ma1)–(ma3), exhaustively over basis indices.
pub fn verify_module_algebra(ma: &ModuleAlgebra) -> VerificationReport {
    let mut report = verify_left_module(ma.module());
    check_unit(ma, &mut report);
    check_ma1(ma, &mut report);
    check_ma2(ma, &mut report);
    check_ma3(ma, &mut report);
    report
}

/// Checks `f: A → A'` is multiplicative, unital and `H`-linear.
pub fn check_module_algebra_morphism(f: &LinearMap, src: &ModuleAlgebra, dst: &ModuleAlgebra) -> Result<VerificationReport> {
    if f.src_dim() != src.dim() || f.dst_dim() != dst.dim() {
        return Err(Error::dims(format!(
            "map is {}x{} but module algebras have dims {} -> {}",
            f.dst_dim(),
            f.src_dim(),
            src.dim(),
            dst.dim()
        )));
    }
    let mut report = VerificationReport::new();
    report.check("(morphism-unit)", &[], &f.apply(src.unit()), dst.unit());
    let images: Vec<_> = (0..src.dim()).map(|i| f.column(i)).collect();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = f.apply(&src.mul(&src.carrier().basis(i), &src.carrier().basis(j)));
            report.check("(morphism-mult)", &[i, j], &lhs, &dst.mul(&images[i], &images[j]));
        }
    }
    let h = src.hopf();
    for hi in 0..h.dim() {
        for i in 0..src.dim() {
            let lhs = f.apply(&src.module().basis_action(hi).apply(&src.carrier().basis(i)));
            let rhs = dst.module().basis_action(hi).apply(&images[i]);
            report.check("(H-linear)", &[hi, i], &lhs, &rhs);
        }
    }
    Ok(report)
}

/// A right `H`-comodule algebra `(B, ρ, Φ_ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleAlgebra {
    hopf: Arc<QuasiHopfAlgebra>,
    algebra: BasedAlgebra,
    coaction: LinearMap,
    phi_rho: TensorElement,
    phi_rho_inv: TensorElement,
}

impl ComoduleAlgebra {
    /// `phi_rho_inv` is computed in `B⊗H⊗H` when not supplied.
    pub fn new(
        hopf: Arc<QuasiHopfAlgebra>,
        algebra: BasedAlgebra,
        coaction: LinearMap,
        phi_rho: TensorElement,
        phi_rho_inv: Option<TensorElement>,
    ) -> Result<Self> {
        let (db, dh) = (algebra.dim(), hopf.dim());
        if algebra.field() != hopf.field() {
            return Err(Error::InvalidInput("comodule algebra and H live over different fields".into()));
        }
        if coaction.src_dim() != db || coaction.dst_dim() != db * dh {
            return Err(Error::dims(format!("coaction must be {}x{db}", db * dh)));
        }
        let shape = [db, dh, dh];
        if phi_rho.dims() != shape {
            return Err(Error::dims(format!("Φ_ρ must have shape {shape:?}, got {:?}", phi_rho.dims())));
        }
        let phi_rho_inv = match phi_rho_inv {
            Some(inv) if inv.dims() != shape => {
                return Err(Error::dims(format!("Φ_ρ⁻¹ must have shape {shape:?}, got {:?}", inv.dims())))
            }
            Some(inv) => inv,
            None => phi_rho
                .inverse(&[&algebra, hopf.algebra(), hopf.algebra()])
                .ok_or(Error::NotInvertible)?,
        };
        Ok(Self {
            hopf,
            algebra,
            coaction,
            phi_rho,
            phi_rho_inv,
        })
    }

    /// `H` itself with `ρ = Δ` and `Φ_ρ = Φ`.
    pub fn regular(hopf: Arc<QuasiHopfAlgebra>) -> Self {
        Self {
            algebra: hopf.algebra().clone(),
            coaction: hopf.comul().clone(),
            phi_rho: hopf.phi().clone(),
            phi_rho_inv: hopf.phi_inv().clone(),
            hopf,
        }
    }

    pub fn hopf(&self) -> &Arc<QuasiHopfAlgebra> {
        &self.hopf
    }

    pub fn algebra(&self) -> &BasedAlgebra {
        &self.algebra
    }

    pub fn coaction(&self) -> &LinearMap {
        &self.coaction
    }

    pub fn phi_rho(&self) -> &TensorElement {
        &self.phi_rho
    }

    pub fn phi_rho_inv(&self) -> &TensorElement {
        &self.phi_rho_inv
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// `ρ(b) = b₍₀₎ ⊗ b₍₁₎`
    pub fn coact(&self, b: &CoordVector) -> TensorElement {
        TensorElement::new(vec![self.dim(), self.hopf.dim()], self.coaction.apply(b)).expect("coaction shape")
    }

    /// `[B, H, …, H]` with `n_h` copies of `H`.
    pub fn legs(&self, n_h: usize) -> Vec<&BasedAlgebra> {
        let mut legs = vec![&self.algebra];
        legs.extend(std::iter::repeat_n(self.hopf.algebra(), n_h));
        legs
    }

    /// The same structure written in a new basis; column `c` of `change` is
    /// the `c`-th new basis vector in old coordinates. Returns the
    /// transported algebra and the inverse change of basis.
    pub fn transport(&self, change: &LinearMap) -> Result<(Self, LinearMap)> {
        let inv = change.inverse().ok_or(Error::NotInvertible)?;
        if change.dst_dim() != self.dim() {
            return Err(Error::dims("basis change must be square of size dim B"));
        }
        let field = self.field();
        let n = self.dim();
        let cols = change.columns();
        let labels = (0..n).map(|i| format!("t{i}")).collect();
        let algebra = BasedAlgebra::from_fn(
            field,
            labels,
            |i, j| inv.apply(&self.algebra.mul(&cols[i], &cols[j])),
            inv.apply(self.algebra.unit()),
        )?;
        let dh = self.hopf.dim();
        let inv_b = |t: &TensorElement| t.map_leg(0, &inv, &[n]);
        let coaction = LinearMap::from_columns(
            field,
            n * dh,
            &(0..n)
                .map(|c| inv_b(&self.coact(&cols[c])).into_coords())
                .collect::<Vec<_>>(),
        );
        let out = Self {
            hopf: self.hopf.clone(),
            algebra,
            coaction,
            phi_rho: inv_b(&self.phi_rho),
            phi_rho_inv: inv_b(&self.phi_rho_inv),
        };
        Ok((out, inv))
    }
}

/// `ρ` is an algebra map, `Φ_ρ` is invertible, and (rca1)–(rca4).
pub fn verify_comodule_algebra(ca: &ComoduleAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let h = ca.hopf();
    let (db, dh) = (ca.dim(), h.dim());
    let basis: Vec<_> = (0..db).map(|i| ca.algebra().basis(i)).collect();
    let two = ca.legs(1);
    let three = ca.legs(2);

    let unit_bh = TensorElement::unit(&two);
    report.check("(rho-alg)", &[], ca.coact(ca.algebra().unit()).coords(), unit_bh.coords());
    let coacts: Vec<_> = basis.iter().map(|b| ca.coact(b)).collect();
    for i in 0..db {
        for j in 0..db {
            let lhs = ca.coact(&ca.algebra().mul(&basis[i], &basis[j]));
            let rhs = coacts[i].mul(&coacts[j], &two);
            report.check("(rho-alg)", &[i, j], lhs.coords(), rhs.coords());
        }
    }

    let unit3 = TensorElement::unit(&three);
    report.check("(phi-rho-inv)", &[0], ca.phi_rho().mul(ca.phi_rho_inv(), &three).coords(), unit3.coords());
    report.check("(phi-rho-inv)", &[1], ca.phi_rho_inv().mul(ca.phi_rho(), &three).coords(), unit3.coords());

    // (rca1): Φ_ρ (ρ⊗id)(ρ(b)) = (id⊗Δ)(ρ(b)) Φ_ρ
    for (i, rho) in coacts.iter().enumerate() {
        let rho_rho = rho.map_leg(0, ca.coaction(), &[db, dh]);
        let lhs = ca.phi_rho().mul(&rho_rho, &three);
        let rhs = h.comul_leg(rho, 1).mul(ca.phi_rho(), &three);
        report.check("(rca1)", &[i], lhs.coords(), rhs.coords());
    }

    // (rca2): (1_B⊗Φ)(id⊗Δ⊗id)(Φ_ρ)(Φ_ρ⊗1_H) = (id⊗id⊗Δ)(Φ_ρ)(ρ⊗id⊗id)(Φ_ρ)
    let four = ca.legs(3);
    let one_b = TensorElement::simple(&[ca.algebra().unit()]);
    let one_h = TensorElement::simple(&[h.one()]);
    let lhs = one_b
        .tensor(h.phi())
        .mul(&h.comul_leg(ca.phi_rho(), 1), &four)
        .mul(&ca.phi_rho().tensor(&one_h), &four);
    let rhs = h
        .comul_leg(ca.phi_rho(), 2)
        .mul(&ca.phi_rho().map_leg(0, ca.coaction(), &[db, dh]), &four);
    report.check("(rca2)", &[], lhs.coords(), rhs.coords());

    // (rca3): (id⊗ε)∘ρ = id
    for (i, rho) in coacts.iter().enumerate() {
        report.check("(rca3)", &[i], h.counit_leg(rho, 1).coords(), &basis[i]);
    }

    // (rca4): (id⊗ε⊗id)(Φ_ρ) = (id⊗id⊗ε)(Φ_ρ) = 1_B⊗1_H
    report.check("(rca4)", &[1], h.counit_leg(ca.phi_rho(), 1).coords(), unit_bh.coords());
    report.check("(rca4)", &[2], h.counit_leg(ca.phi_rho(), 2).coords(), unit_bh.coords());
    report
}

/// Checks `f: B → B'` is an algebra map with `ρ'∘f = (f⊗id)∘ρ` and
/// `Φ_ρ' = (f⊗id⊗id)(Φ_ρ)`.
pub fn check_comodule_algebra_morphism(
    f: &LinearMap,
    src: &ComoduleAlgebra,
    dst: &ComoduleAlgebra,
) -> Result<VerificationReport> {
    let mut report = check_algebra_morphism(f, src.algebra(), dst.algebra())?;
    let db = dst.dim();
    for i in 0..src.dim() {
        let lhs = dst.coact(&f.column(i));
        let rhs = src.coact(&src.algebra().basis(i)).map_leg(0, f, &[db]);
        report.check("(comodule-morphism)", &[i], lhs.coords(), rhs.coords());
    }
    let pushed = src.phi_rho().map_leg(0, f, &[db]);
    report.check("(phi-rho-morphism)", &[], dst.phi_rho().coords(), pushed.coords());
    Ok(report)
}

#[cfg(test)]
mod tests;
