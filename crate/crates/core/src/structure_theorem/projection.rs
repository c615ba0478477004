use crate::algebra::TensorElement;
use crate::error::{ensure_passed, Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap, Subspace};
use crate::quasi_hopf::compute_pq;
use crate::report::VerificationReport;
use crate::representations::{verify_left_module, LeftModule};

use super::{flat, vh_bimodule, QuasiHopfBimodule};

/// The matrix of `E(m) = q¹·m₍₀₎·βS(q²m₍₁₎)`. Fails if `E` is not idempotent.
pub fn projection_e(m: &QuasiHopfBimodule) -> Result<LinearMap> {
    let h = m.hopf();
    let pq = compute_pq(h)?;
    let field = m.field();
    let q: Vec<_> = pq.q.terms().map(|(i, c)| (i, c.clone())).collect();
    let columns: Vec<_> = (0..m.dim())
        .map(|mi| {
            let mut out = CoordVector::zeros(field, m.dim());
            for (idx, c) in m.coact(&m.basis(mi)).terms() {
                for (qi, d) in &q {
                    let tail = h.mul(h.beta(), &h.s(&h.mul(&h.basis(qi[1]), &h.basis(idx[1]))));
                    let moved = m.right_matrix(&tail).column(idx[0]);
                    out.add_scaled(&(c * d), &m.left_basis(qi[0]).apply(&moved));
                }
            }
            out
        })
        .collect();
    let e = LinearMap::from_columns(field, m.dim(), &columns);
    let mut report = VerificationReport::new();
    report.check("(E1)", &[], &flat(&e.compose(&e)), &flat(&e));
    ensure_passed("projection E", report)?;
    Ok(e)
}

/// The coinvariants `M^{co(H)} = E(M)` with the echelon basis of `image(E)`
/// and the action `h▷n = E(h·n)` written in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    subspace: Subspace,
    module: LeftModule,
}

impl Coinvariants {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// `(V, ▷)` in coinvariant coordinates.
    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Columns are the coinvariant basis vectors in ambient coordinates.
    pub fn inclusion(&self) -> LinearMap {
        self.subspace.inclusion(self.module.field())
    }

    /// Coordinates of an ambient vector that must be coinvariant.
    pub fn coords(&self, v: &CoordVector) -> Result<CoordVector> {
        self.subspace
            .coords_of(v)
            .ok_or_else(|| Error::Precondition("vector is not coinvariant".into()))
    }
}

/// Basis labels are taken from the ambient labels at the pivot positions.
pub fn coinvariants(m: &QuasiHopfBimodule, e: &LinearMap) -> Result<Coinvariants> {
    let subspace = Subspace::image_of(e);
    let field = m.field();
    let h = m.hopf();
    let dv = subspace.dim();
    let mut action = LinearMap::zeros(field, dv, h.dim() * dv);
    for hi in 0..h.dim() {
        for (ni, n) in subspace.basis().iter().enumerate() {
            let image = e.apply(&m.left_basis(hi).apply(n));
            let coords = subspace.coords_of(&image).ok_or(Error::Precondition("E(h·n) left image(E)".into()))?;
            for (r, x) in coords.iter().enumerate() {
                action.set(r, hi * dv + ni, x.clone());
            }
        }
    }
    let labels = subspace.pivots().iter().map(|&p| m.labels()[p].clone()).collect();
    let module = LeftModule::new(h.clone(), labels, action)?;
    ensure_passed("coinvariant action", verify_left_module(&module))?;
    Ok(Coinvariants { subspace, module })
}

fn same_subspace(report: &mut VerificationReport, witness: usize, a: &Subspace, b: &Subspace) {
    let agree = a.dim() == b.dim() && a.basis().iter().all(|v| b.contains(v));
    let dims = |s: &Subspace| CoordVector::from_ints(Field::Rational, &[s.dim() as i64]);
    if agree {
        report.check("(coinv)", &[witness], &dims(a), &dims(a));
    } else {
        report.fail("(coinv)", &[witness], dims(a), dims(b));
    }
}

/// The listed properties of `E` and `▷ = E(h·-)` on basis elements, tagged
/// `(E1)`–`(E7)` in the order: `E² = E`; `E(m·h) = E(m)ε(h)`;
/// `h▷E(m) = E(h·m)`; `(hh')▷m = h▷(h'▷m)`; `h·E(m) = (h₁▷E(m))·h₂`;
/// `E(m₍₀₎)·m₍₁₎ = m`; `E(E(m)₍₀₎)⊗E(m)₍₁₎ = E(m)⊗1`. Under `(coinv)`, the
/// image of `E` is compared with the fixed points of `E`, with
/// `{n : E(n₍₀₎)⊗n₍₁₎ = E(n)⊗1}` and with `{n : ρ(n) = (x¹▷n)·x²⊗x³}`.
pub fn verify_e_properties(m: &QuasiHopfBimodule, e: &LinearMap) -> VerificationReport {
    let mut report = VerificationReport::new();
    let h = m.hopf();
    let field = m.field();
    let (dm, dh) = (m.dim(), h.dim());
    let tri = |hh: &CoordVector, x: &CoordVector| e.apply(&m.left_act(hh, x));
    let images: Vec<_> = (0..dm).map(|i| e.column(i)).collect();

    for (i, em) in images.iter().enumerate() {
        report.check("(E1)", &[i], &e.apply(em), em);
    }
    for i in 0..dm {
        for hi in 0..dh {
            let lhs = e.apply(&m.right_basis(hi).column(i));
            report.check("(E2)", &[i, hi], &lhs, &images[i].scale(&h.counit_of(&h.basis(hi))));
        }
    }
    for hi in 0..dh {
        for i in 0..dm {
            let lhs = tri(&h.basis(hi), &images[i]);
            let rhs = e.apply(&m.left_basis(hi).column(i));
            report.check("(E3)", &[hi, i], &lhs, &rhs);
        }
    }
    for a in 0..dh {
        for b in 0..dh {
            let ab = h.mul(&h.basis(a), &h.basis(b));
            for i in 0..dm {
                let mi = m.basis(i);
                let lhs = tri(&ab, &mi);
                let rhs = tri(&h.basis(a), &tri(&h.basis(b), &mi));
                report.check("(E4)", &[a, b, i], &lhs, &rhs);
            }
        }
    }
    for hi in 0..dh {
        let delta = h.comultiply(&h.basis(hi));
        for i in 0..dm {
            let lhs = m.left_basis(hi).apply(&images[i]);
            let mut rhs = CoordVector::zeros(field, dm);
            for (d, c) in delta.terms() {
                let acted = tri(&h.basis(d[0]), &images[i]);
                rhs.add_scaled(c, &m.right_basis(d[1]).apply(&acted));
            }
            report.check("(E5)", &[hi, i], &lhs, &rhs);
        }
    }
    for i in 0..dm {
        let mut lhs = CoordVector::zeros(field, dm);
        for (idx, c) in m.coact(&m.basis(i)).terms() {
            lhs.add_scaled(c, &m.right_basis(idx[1]).apply(&e.column(idx[0])));
        }
        report.check("(E6)", &[i], &lhs, &m.basis(i));
    }
    let one_tail = |x: &CoordVector| x.tensor(h.one());
    let e0 = |t: &TensorElement| t.map_leg(0, e, &[dm]);
    for (i, em) in images.iter().enumerate() {
        report.check("(E7)", &[i], e0(&m.coact(em)).coords(), &one_tail(em));
    }

    // the characterizations of M^{co(H)}
    let image = Subspace::image_of(e);
    let id = LinearMap::identity(field, dm);
    same_subspace(&mut report, 0, &image, &Subspace::kernel_of(&e.sub(&id)));
    let e7 = LinearMap::from_columns(
        field,
        dm * dh,
        &(0..dm)
            .map(|i| e0(&m.coact(&m.basis(i))).coords().sub(&one_tail(&images[i])))
            .collect::<Vec<_>>(),
    );
    same_subspace(&mut report, 1, &image, &Subspace::kernel_of(&e7));
    let phi_inv: Vec<_> = h.phi_inv().terms().map(|(i, c)| (i, c.clone())).collect();
    let rho_form = LinearMap::from_columns(
        field,
        dm * dh,
        &(0..dm)
            .map(|i| {
                let mi = m.basis(i);
                let mut rhs = TensorElement::zero(field, &[dm, dh]);
                for (x, c) in &phi_inv {
                    let acted = m.right_basis(x[1]).apply(&tri(&h.basis(x[0]), &mi));
                    rhs.add_simple(c, &[&acted, &h.basis(x[2])]);
                }
                m.coaction().column(i).sub(rhs.coords())
            })
            .collect::<Vec<_>>(),
    );
    same_subspace(&mut report, 2, &image, &Subspace::kernel_of(&rho_form));
    report
}

/// `E`, the coinvariants and the isomorphism
/// `ν: V⊗H → M`, `ν(n⊗h) = n·h`, with `ν⁻¹(m) = E(m₍₀₎)⊗m₍₁₎`, where `V⊗H`
/// carries the bimodule structure induced by `▷`.
#[derive(Clone, Debug)]
pub struct CoinvariantDecomposition {
    pub e: LinearMap,
    pub coinvariants: Coinvariants,
    pub nu: LinearMap,
    pub nu_inv: LinearMap,
    pub report: VerificationReport,
}

/// Builds `ν` and `ν⁻¹`, checks they are mutually inverse and that `ν`
/// intertwines both actions and the coactions.
pub fn bimodule_structure_iso(m: &QuasiHopfBimodule) -> Result<CoinvariantDecomposition> {
    let e = projection_e(m)?;
    let coinv = coinvariants(m, &e)?;
    let h = m.hopf();
    let field = m.field();
    let (dm, dh, dv) = (m.dim(), h.dim(), coinv.dim());
    let basis = coinv.subspace().basis().to_vec();

    let mut nu_cols = Vec::with_capacity(dv * dh);
    for n in &basis {
        for hi in 0..dh {
            nu_cols.push(m.right_basis(hi).apply(n));
        }
    }
    let nu = LinearMap::from_columns(field, dm, &nu_cols);
    let mut inv_cols = Vec::with_capacity(dm);
    for i in 0..dm {
        let mut out = TensorElement::zero(field, &[dv, dh]);
        for (idx, c) in m.coact(&m.basis(i)).terms() {
            let coords = coinv.coords(&e.column(idx[0]))?;
            out.add_simple(c, &[&coords, &h.basis(idx[1])]);
        }
        inv_cols.push(out.into_coords());
    }
    let nu_inv = LinearMap::from_columns(field, dv * dh, &inv_cols);

    let mut report = VerificationReport::new();
    report.check("(nu-inverse)", &[0], &flat(&nu.compose(&nu_inv)), &flat(&LinearMap::identity(field, dm)));
    report.check("(nu-inverse)", &[1], &flat(&nu_inv.compose(&nu)), &flat(&LinearMap::identity(field, dv * dh)));
    let vh = vh_bimodule(coinv.module())?;
    for hi in 0..dh {
        let lhs = nu.compose(vh.left_basis(hi));
        report.check("(nu-bimodule)", &[0, hi], &flat(&lhs), &flat(&m.left_basis(hi).compose(&nu)));
        let lhs = nu.compose(vh.right_basis(hi));
        report.check("(nu-bimodule)", &[1, hi], &flat(&lhs), &flat(&m.right_basis(hi).compose(&nu)));
    }
    let nu_h = crate::linalg::kron(&nu, &LinearMap::identity(field, dh));
    report.check(
        "(nu-comodule)",
        &[],
        &flat(&m.coaction().compose(&nu)),
        &flat(&nu_h.compose(vh.coaction())),
    );
    let report = ensure_passed("bimodule structure theorem", report)?;
    Ok(CoinvariantDecomposition {
        e,
        coinvariants: coinv,
        nu,
        nu_inv,
        report,
    })
}
