//! Quasi-Hopf bimodules, the projection `E` onto coinvariants, and the
//! decomposition `B ≅ A # H` of a comodule algebra with a map `v: H → B`.

mod decompose;
mod projection;

use std::sync::Arc;

use crate::algebra::TensorElement;
use crate::error::{Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap};
use crate::quasi_hopf::QuasiHopfAlgebra;
use crate::report::VerificationReport;
use crate::representations::{check_comodule_algebra_morphism, ComoduleAlgebra, LeftModule};

pub use decompose::{decompose, roundtrip, theta_map, RoundtripOutcome, SmashDecomposition, StarProduct};
pub use projection::{
    bimodule_structure_iso, coinvariants, projection_e, verify_e_properties, CoinvariantDecomposition, Coinvariants,
};

/// A right quasi-Hopf `H`-bimodule: an `H`-bimodule `M` with a coaction
/// `ρ: M → M⊗H` that is a bimodule map, counital, and coassociative up to
/// conjugation by `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHopfBimodule {
    hopf: Arc<QuasiHopfAlgebra>,
    labels: Vec<String>,
    left: Vec<LinearMap>,
    right: Vec<LinearMap>,
    coaction: LinearMap,
}

impl QuasiHopfBimodule {
    /// `left` is `dim M × (dim H · dim M)` on `h⊗m`; `right` is
    /// `dim M × (dim M · dim H)` on `m⊗h`.
    pub fn new(
        hopf: Arc<QuasiHopfAlgebra>,
        labels: Vec<String>,
        left: &LinearMap,
        right: &LinearMap,
        coaction: LinearMap,
    ) -> Result<Self> {
        let (dh, dm) = (hopf.dim(), labels.len());
        if dm == 0 {
            return Err(Error::InvalidInput("bimodules must have positive dimension".into()));
        }
        if left.dst_dim() != dm || left.src_dim() != dh * dm {
            return Err(Error::dims(format!("left action must be {dm}x{}", dh * dm)));
        }
        if right.dst_dim() != dm || right.src_dim() != dh * dm {
            return Err(Error::dims(format!("right action must be {dm}x{}", dh * dm)));
        }
        if coaction.src_dim() != dm || coaction.dst_dim() != dm * dh {
            return Err(Error::dims(format!("coaction must be {}x{dm}", dm * dh)));
        }
        let field = hopf.field();
        let left = (0..dh)
            .map(|h| LinearMap::from_fn(field, dm, dm, |r, c| left.get(r, h * dm + c).clone()))
            .collect();
        let right = (0..dh)
            .map(|h| LinearMap::from_fn(field, dm, dm, |r, c| right.get(r, c * dh + h).clone()))
            .collect();
        Ok(Self {
            hopf,
            labels,
            left,
            right,
            coaction,
        })
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

    pub fn field(&self) -> Field {
        self.hopf.field()
    }

    pub fn coaction(&self) -> &LinearMap {
        &self.coaction
    }

    pub fn basis(&self, i: usize) -> CoordVector {
        CoordVector::basis(self.field(), self.dim(), i)
    }

    /// Matrix of `m ↦ h·m`.
    pub fn left_matrix(&self, h: &CoordVector) -> LinearMap {
        combine(self.field(), self.dim(), &self.left, h)
    }

    /// Matrix of `m ↦ m·h`.
    pub fn right_matrix(&self, h: &CoordVector) -> LinearMap {
        combine(self.field(), self.dim(), &self.right, h)
    }

    pub fn left_basis(&self, h: usize) -> &LinearMap {
        &self.left[h]
    }

    pub fn right_basis(&self, h: usize) -> &LinearMap {
        &self.right[h]
    }

    pub fn left_act(&self, h: &CoordVector, m: &CoordVector) -> CoordVector {
        self.left_matrix(h).apply(m)
    }

    pub fn right_act(&self, m: &CoordVector, h: &CoordVector) -> CoordVector {
        self.right_matrix(h).apply(m)
    }

    pub fn coact(&self, m: &CoordVector) -> TensorElement {
        TensorElement::new(vec![self.dim(), self.hopf.dim()], self.coaction.apply(m)).expect("coaction shape")
    }

    /// `u·t` for `u ∈ H^{⊗(n+1)}` and `t ∈ M⊗H^{⊗n}`.
    pub fn left_tensor(&self, u: &TensorElement, t: &TensorElement) -> TensorElement {
        self.act_tensor(u, t, true)
    }

    /// `t·u` for `t ∈ M⊗H^{⊗n}` and `u ∈ H^{⊗(n+1)}`.
    pub fn right_tensor(&self, t: &TensorElement, u: &TensorElement) -> TensorElement {
        self.act_tensor(u, t, false)
    }

    fn act_tensor(&self, u: &TensorElement, t: &TensorElement, from_left: bool) -> TensorElement {
        assert_eq!(u.dims().len(), t.dims().len(), "tensor legs differ");
        let h = &self.hopf;
        let mut out = TensorElement::zero(self.field(), t.dims());
        for (ui, uc) in u.terms() {
            let acts = if from_left { &self.left } else { &self.right };
            for (ti, tc) in t.terms() {
                let m = acts[ui[0]].column(ti[0]);
                let mut parts = vec![m];
                for leg in 1..ui.len() {
                    let (a, b) = (h.basis(ui[leg]), h.basis(ti[leg]));
                    parts.push(if from_left { h.mul(&a, &b) } else { h.mul(&b, &a) });
                }
                let refs: Vec<_> = parts.iter().collect();
                out.add_simple(&(uc * tc), &refs);
            }
        }
        out
    }
}

fn combine(field: Field, dim: usize, mats: &[LinearMap], h: &CoordVector) -> LinearMap {
    let mut m = LinearMap::zeros(field, dim, dim);
    for (i, c) in h.nonzero() {
        m = m.add(&mats[i].scale(c));
    }
    m
}

fn flat(m: &LinearMap) -> CoordVector {
    CoordVector::from_scalars(m.field(), m.entries().to_vec())
}

/// Bimodule axioms, `ρ` a bimodule map, (qb1) and (qb2), on basis elements.
pub fn verify_bimodule(m: &QuasiHopfBimodule) -> VerificationReport {
    let mut report = VerificationReport::new();
    let h = m.hopf();
    let (dh, dm) = (h.dim(), m.dim());
    let id = LinearMap::identity(m.field(), dm);
    report.check("(bimodule)", &[0], &flat(&m.left_matrix(h.one())), &flat(&id));
    report.check("(bimodule)", &[1], &flat(&m.right_matrix(h.one())), &flat(&id));
    for i in 0..dh {
        for j in 0..dh {
            let hh = h.mul(&h.basis(i), &h.basis(j));
            let lhs = m.left_matrix(&hh);
            report.check("(bimodule)", &[0, i, j], &flat(&lhs), &flat(&m.left[i].compose(&m.left[j])));
            let lhs = m.right_matrix(&hh);
            report.check("(bimodule)", &[1, i, j], &flat(&lhs), &flat(&m.right[j].compose(&m.right[i])));
            let lhs = m.right[j].compose(&m.left[i]);
            report.check("(bimodule)", &[2, i, j], &flat(&lhs), &flat(&m.left[i].compose(&m.right[j])));
        }
    }

    let coacts: Vec<_> = (0..dm).map(|i| m.coact(&m.basis(i))).collect();
    for hi in 0..dh {
        let delta = h.comultiply(&h.basis(hi));
        for (mi, rho) in coacts.iter().enumerate() {
            let lhs = m.coact(&m.left[hi].column(mi));
            report.check("(coaction-bimodule)", &[0, hi, mi], lhs.coords(), m.left_tensor(&delta, rho).coords());
            let lhs = m.coact(&m.right[hi].column(mi));
            report.check("(coaction-bimodule)", &[1, hi, mi], lhs.coords(), m.right_tensor(rho, &delta).coords());
        }
    }

    for (mi, rho) in coacts.iter().enumerate() {
        report.check("(qb1)", &[mi], h.counit_leg(rho, 1).coords(), &m.basis(mi));
    }

    for (mi, rho) in coacts.iter().enumerate() {
        let rho_rho = rho.map_leg(0, m.coaction(), &[dm, dh]);
        let lhs = m.left_tensor(h.phi(), &rho_rho);
        let rhs = m.right_tensor(&h.comul_leg(rho, 1), h.phi());
        report.check("(qb2)", &[mi], lhs.coords(), rhs.coords());
    }
    report
}

/// `V⊗H` with `a·(v⊗h)·b = (a₁▷v)⊗a₂hb` and
/// `ρ(v⊗h) = (x¹▷v ⊗ x²h₁) ⊗ x³h₂`.
pub fn vh_bimodule(module: &LeftModule) -> Result<QuasiHopfBimodule> {
    let h = module.hopf().clone();
    let (dv, dh) = (module.dim(), h.dim());
    let field = h.field();
    let n = dv * dh;
    let e = |i: usize| h.basis(i);
    let mut left = LinearMap::zeros(field, n, dh * n);
    let mut right = LinearMap::zeros(field, n, n * dh);
    let mut coaction_cols = Vec::with_capacity(n);
    for vi in 0..dv {
        let v = CoordVector::basis(field, dv, vi);
        for hk in 0..dh {
            let col = vi * dh + hk;
            for a in 0..dh {
                let mut out = TensorElement::zero(field, &[dv, dh]);
                for (d, c) in h.comultiply(&e(a)).terms() {
                    out.add_simple(c, &[&module.basis_action(d[0]).apply(&v), &h.mul(&e(d[1]), &e(hk))]);
                }
                set_column(&mut left, a * n + col, out.coords());
                let out = v.tensor(&h.mul(&e(hk), &e(a)));
                set_column(&mut right, col * dh + a, &out);
            }
            let mut rho = TensorElement::zero(field, &[dv, dh, dh]);
            for (x, c) in h.phi_inv().terms() {
                let xv = module.basis_action(x[0]).apply(&v);
                for (d, c2) in h.comultiply(&e(hk)).terms() {
                    rho.add_simple(&(c * c2), &[&xv, &h.mul(&e(x[1]), &e(d[0])), &h.mul(&e(x[2]), &e(d[1]))]);
                }
            }
            coaction_cols.push(rho.into_coords());
        }
    }
    let labels = module
        .labels()
        .iter()
        .flat_map(|v| h.algebra().labels().iter().map(move |l| format!("{v}⊗{l}")))
        .collect();
    let coaction = LinearMap::from_columns(field, n * dh, &coaction_cols);
    let m = QuasiHopfBimodule::new(h, labels, &left, &right, coaction)?;
    crate::error::ensure_passed("V⊗H bimodule", verify_bimodule(&m))?;
    Ok(m)
}

fn set_column(m: &mut LinearMap, c: usize, v: &CoordVector) {
    for (r, x) in v.iter().enumerate() {
        m.set(r, c, x.clone());
    }
}

/// `B` as a quasi-Hopf bimodule through `h·b·h' = v(h)bv(h')` with its own
/// coaction. `v` must be a comodule algebra morphism `H → B`; otherwise the
/// returned error carries the failed conditions.
pub fn bimodule_from_comodule(b: &ComoduleAlgebra, v: &LinearMap) -> Result<QuasiHopfBimodule> {
    let h = b.hopf().clone();
    let pre = check_comodule_algebra_morphism(v, &ComoduleAlgebra::regular(h.clone()), b)?;
    if !pre.passed() {
        return Err(Error::verification("precondition: v is a comodule algebra morphism H -> B", pre));
    }
    let (db, dh) = (b.dim(), h.dim());
    let field = b.field();
    let alg = b.algebra();
    let mut left = LinearMap::zeros(field, db, dh * db);
    let mut right = LinearMap::zeros(field, db, db * dh);
    for hi in 0..dh {
        let vh = v.column(hi);
        for bi in 0..db {
            let e = alg.basis(bi);
            set_column(&mut left, hi * db + bi, &alg.mul(&vh, &e));
            set_column(&mut right, bi * dh + hi, &alg.mul(&e, &vh));
        }
    }
    let m = QuasiHopfBimodule::new(h, alg.labels().to_vec(), &left, &right, b.coaction().clone())?;
    crate::error::ensure_passed("bimodule from comodule algebra", verify_bimodule(&m))?;
    Ok(m)
}
