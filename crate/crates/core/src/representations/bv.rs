use std::sync::Arc;

use crate::algebra::{check_algebra_morphism, BasedAlgebra, TensorElement};
use crate::error::{ensure_passed, Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap};
use crate::quasi_hopf::{compute_pq, QuasiHopfAlgebra};

use super::{check_module_algebra_morphism, smash_product, verify_module_algebra, ModuleAlgebra};

/// `Ω = X¹ ⊗ S(x¹X²)αx²X³₁ ⊗ S(x³X³₂)`, so that `b∘b' = v(Ω¹) b v(Ω²) b' v(Ω³)`.
fn omega(h: &QuasiHopfAlgebra) -> TensorElement {
    let d = h.dim();
    let e = |i: usize| h.basis(i);
    let mut out = TensorElement::zero(h.field(), &[d, d, d]);
    for (big, c) in h.phi().terms() {
        let split = h.comultiply(&e(big[2]));
        for (small, c2) in h.phi_inv().terms() {
            let cc = c * c2;
            let s_left = h.s(&h.mul(&e(small[0]), &e(big[1])));
            for (y, c3) in split.terms() {
                let mid = h.product(&[&s_left, h.alpha(), &e(small[1]), &e(y[0])]);
                let right = h.s(&h.mul(&e(small[2]), &e(y[1])));
                out.add_simple(&(&cc * c3), &[&e(big[0]), &mid, &right]);
            }
        }
    }
    out
}

/// The module algebra `B^v` on the vector space of `B`, for an algebra map
/// `v: H → B`: product `b∘b' = v(X¹)bv(S(x¹X²)αx²X³₁)b'v(S(x³X³₂))`, unit
/// `v(β)`, action `h▷b = v(h₁)bv(S(h₂))`.
pub fn bv_construction(b: &BasedAlgebra, v: &LinearMap, hopf: &Arc<QuasiHopfAlgebra>) -> Result<ModuleAlgebra> {
    let report = check_algebra_morphism(v, hopf.algebra(), b)?;
    if !report.passed() {
        return Err(Error::Precondition(format!("v is not an algebra map H -> B\n{report}")));
    }
    let field = b.field();
    let n = b.dim();
    let images: Vec<_> = (0..hopf.dim()).map(|i| v.column(i)).collect();
    let om: Vec<_> = omega(hopf).terms().map(|(i, c)| (i, c.clone())).collect();
    let basis: Vec<_> = (0..n).map(|i| b.basis(i)).collect();
    let carrier = BasedAlgebra::from_fn(
        field,
        b.labels().to_vec(),
        |i, j| {
            let mut out = CoordVector::zeros(field, n);
            for (t, c) in &om {
                let prod = b.product(&[&images[t[0]], &basis[i], &images[t[1]], &basis[j], &images[t[2]]]);
                out.add_scaled(c, &prod);
            }
            out
        },
        v.apply(hopf.beta()),
    )?;
    let mut action = LinearMap::zeros(field, n, hopf.dim() * n);
    for hi in 0..hopf.dim() {
        let split = hopf.comultiply(&hopf.basis(hi));
        for (bi, bb) in basis.iter().enumerate() {
            let mut out = CoordVector::zeros(field, n);
            for (y, c) in split.terms() {
                let s = v.apply(&hopf.s(&hopf.basis(y[1])));
                out.add_scaled(c, &b.product(&[&images[y[0]], bb, &s]));
            }
            for (r, x) in out.iter().enumerate() {
                action.set(r, hi * n + bi, x.clone());
            }
        }
    }
    let ma = ModuleAlgebra::new(hopf.clone(), carrier, action)?;
    ensure_passed("B^v construction", verify_module_algebra(&ma))?;
    Ok(ma)
}

/// `i_0(a) = p¹·a # p²`, checked to be an injective morphism of module
/// algebras `A → (A#H)^j`.
pub fn i0_map(ma: &ModuleAlgebra) -> Result<LinearMap> {
    let hopf = ma.hopf();
    let pq = compute_pq(hopf)?;
    let (smash, j) = smash_product(ma)?;
    let field = ma.field();
    let (da, dh) = (ma.dim(), hopf.dim());
    let columns: Vec<_> = (0..da)
        .map(|i| {
            let a = ma.carrier().basis(i);
            let mut out = TensorElement::zero(field, &[da, dh]);
            for (p, c) in pq.p.terms() {
                out.add_simple(c, &[&ma.module().basis_action(p[0]).apply(&a), &hopf.basis(p[1])]);
            }
            out.into_coords()
        })
        .collect();
    let i0 = LinearMap::from_columns(field, da * dh, &columns);
    let target = bv_construction(smash.algebra(), &j, hopf)?;
    let mut report = check_module_algebra_morphism(&i0, ma, &target)?;
    let rank = i0.rank();
    report.check(
        "(injective)",
        &[],
        &CoordVector::from_ints(Field::Rational, &[rank as i64]),
        &CoordVector::from_ints(Field::Rational, &[da as i64]),
    );
    ensure_passed("i_0", report)?;
    Ok(i0)
}
