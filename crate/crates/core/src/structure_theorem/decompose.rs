use crate::algebra::{BasedAlgebra, TensorElement};
use crate::error::{ensure_passed, Error, Result};
use crate::linalg::{CoordVector, Field, LinearMap};
use crate::quasi_hopf::{compute_pq, PQElements};
use crate::report::VerificationReport;
use crate::representations::{
    bv_construction, check_comodule_algebra_morphism, check_module_algebra_morphism, i0_map, smash_product,
    verify_module_algebra, ComoduleAlgebra, ModuleAlgebra,
};

use super::{bimodule_from_comodule, bimodule_structure_iso, flat, verify_e_properties, Coinvariants};

/// The product `b*b' = E(bb')` on a comodule algebra `B` with `v: H → B`,
/// together with the action `h▷b = E(v(h)b)`.
#[derive(Clone, Debug)]
pub struct StarProduct<'a> {
    b: &'a ComoduleAlgebra,
    v: &'a LinearMap,
    e: &'a LinearMap,
    pq: PQElements,
}

impl<'a> StarProduct<'a> {
    /// `e` must be the projection of the bimodule built from `b` and `v`.
    pub fn new(b: &'a ComoduleAlgebra, v: &'a LinearMap, e: &'a LinearMap) -> Result<Self> {
        Ok(Self {
            b,
            v,
            e,
            pq: compute_pq(b.hopf())?,
        })
    }

    pub fn triangle(&self, h: &CoordVector, x: &CoordVector) -> CoordVector {
        self.e.apply(&self.b.algebra().mul(&self.v.apply(h), x))
    }

    fn check_coinvariant(&self, a: &CoordVector) -> Result<()> {
        if &self.e.apply(a) == a {
            Ok(())
        } else {
            Err(Error::Precondition("star product inputs must be coinvariant".into()))
        }
    }

    /// `E(aa')` for coinvariant `a, a'`.
    pub fn star(&self, a: &CoordVector, a2: &CoordVector) -> Result<CoordVector> {
        self.check_coinvariant(a)?;
        self.check_coinvariant(a2)?;
        Ok(self.e.apply(&self.b.algebra().mul(a, a2)))
    }

    /// `v(q¹)(t¹▷a)v(t²)(z¹▷a')v(z²βS(q²t³z³))`, with `t` and `z` two copies
    /// of `Φ⁻¹`.
    pub fn star_expanded(&self, a: &CoordVector, a2: &CoordVector) -> Result<CoordVector> {
        self.check_coinvariant(a)?;
        self.check_coinvariant(a2)?;
        let h = self.b.hopf();
        let alg = self.b.algebra();
        let e = |i: usize| h.basis(i);
        let v = |x: &CoordVector| self.v.apply(x);
        let phi_inv: Vec<_> = h.phi_inv().terms().map(|(i, c)| (i, c.clone())).collect();
        let mut out = CoordVector::zeros(self.b.field(), self.b.dim());
        for (q, cq) in self.pq.q.terms() {
            for (t, ct) in &phi_inv {
                let head = alg.product(&[&v(&e(q[0])), &self.triangle(&e(t[0]), a), &v(&e(t[1]))]);
                let q2t3 = h.mul(&e(q[1]), &e(t[2]));
                for (z, cz) in &phi_inv {
                    let tail = h.mul(&e(z[1]), &h.mul(h.beta(), &h.s(&h.mul(&q2t3, &e(z[2])))));
                    let term = alg.product(&[&head, &self.triangle(&e(z[0]), a2), &v(&tail)]);
                    out.add_scaled(&(&(cq * ct) * cz), &term);
                }
            }
        }
        Ok(out)
    }
}

/// `B ≅ A # H`: the recovered module algebra `A` on `B^{co(H)}`, the
/// isomorphism `Ψ(a⊗h) = a·v(h)` with inverse `Ψ⁻¹(b) = E(b₍₀₎)⊗b₍₁₎`, and
/// `θ(a) = (p¹▷a)v(p²)`. `A` is written in the echelon basis of `image(E)`.
#[derive(Clone, Debug)]
pub struct SmashDecomposition {
    pub module_algebra: ModuleAlgebra,
    pub coinvariants: Coinvariants,
    pub e: LinearMap,
    pub psi: LinearMap,
    pub psi_inv: LinearMap,
    pub theta: LinearMap,
    pub smash: ComoduleAlgebra,
    pub j: LinearMap,
    pub report: VerificationReport,
}

fn rational_flag(n: usize) -> CoordVector {
    CoordVector::from_ints(Field::Rational, &[n as i64])
}

/// Runs the full decomposition of `B` along `v` and refuses to return if
/// any step fails to verify.
pub fn decompose(b: &ComoduleAlgebra, v: &LinearMap) -> Result<SmashDecomposition> {
    let h = b.hopf().clone();
    let field = b.field();
    let alg = b.algebra();
    let (db, dh) = (b.dim(), h.dim());
    let m = bimodule_from_comodule(b, v)?;
    let iso = bimodule_structure_iso(&m)?;
    let mut report = iso.report.clone();
    report.merge(verify_e_properties(&m, &iso.e));
    let coinv = iso.coinvariants;
    let e = iso.e;
    let star = StarProduct::new(b, v, &e)?;
    let basis = coinv.subspace().basis().to_vec();
    let da = basis.len();
    report.check("(E-unit)", &[], &e.apply(alg.unit()), alg.unit());
    report.check("(dim)", &[], &rational_flag(db), &rational_flag(da * dh));
    let report = ensure_passed("coinvariants", report)?;

    let mut products = Vec::with_capacity(da * da);
    let mut report = report;
    for i in 0..da {
        for j in 0..da {
            let s = star.star(&basis[i], &basis[j])?;
            report.check("(star)", &[i, j], &s, &star.star_expanded(&basis[i], &basis[j])?);
            products.push(coinv.coords(&s)?);
        }
    }
    let carrier = BasedAlgebra::from_fn(
        field,
        coinv.module().labels().to_vec(),
        |i, j| products[i * da + j].clone(),
        coinv.coords(alg.unit())?,
    )?;
    let a = ModuleAlgebra::new(h.clone(), carrier, coinv.module().action().clone())?;
    report.merge(verify_module_algebra(&a));
    let report = ensure_passed("recovered module algebra", report)?;
    let (smash, j) = smash_product(&a)?;
    let psi = iso.nu;
    let psi_inv = iso.nu_inv;

    let mut report = report;
    report.merge(check_comodule_algebra_morphism(&psi, &smash, b)?);
    report.merge(check_comodule_algebra_morphism(&psi_inv, b, &smash)?);
    report.check("(psi-j)", &[], &flat(&psi.compose(&j)), &flat(v));

    for hi in 0..dh {
        let delta = h.comultiply(&h.basis(hi));
        for (ai, an) in basis.iter().enumerate() {
            let lhs = alg.mul(&v.column(hi), an);
            let mut rhs = CoordVector::zeros(field, db);
            for (d, c) in delta.terms() {
                rhs.add_scaled(c, &alg.mul(&star.triangle(&h.basis(d[0]), an), &v.column(d[1])));
            }
            report.check("(ve)", &[hi, ai], &lhs, &rhs);
        }
    }
    for (ai, an) in basis.iter().enumerate() {
        let mut rhs = TensorElement::zero(field, &[db, dh]);
        for (x, c) in h.phi_inv().terms() {
            let acted = alg.mul(&star.triangle(&h.basis(x[0]), an), &v.column(x[1]));
            rhs.add_simple(c, &[&acted, &h.basis(x[2])]);
        }
        report.check("(aa)", &[ai], b.coact(an).coords(), rhs.coords());
    }
    let report = ensure_passed("smash decomposition", report)?;

    let (theta, theta_report) = build_theta(&a, &coinv, &star, &psi, b, v)?;
    let mut report = report;
    report.merge(theta_report);
    let report = ensure_passed("theta", report)?;
    Ok(SmashDecomposition {
        module_algebra: a,
        coinvariants: coinv,
        e,
        psi,
        psi_inv,
        theta,
        smash,
        j,
        report,
    })
}

fn build_theta(
    a: &ModuleAlgebra,
    coinv: &Coinvariants,
    star: &StarProduct<'_>,
    psi: &LinearMap,
    b: &ComoduleAlgebra,
    v: &LinearMap,
) -> Result<(LinearMap, VerificationReport)> {
    let h = b.hopf();
    let field = b.field();
    let pq = compute_pq(h)?;
    let columns: Vec<_> = coinv
        .subspace()
        .basis()
        .iter()
        .map(|n| {
            let mut out = CoordVector::zeros(field, b.dim());
            for (p, c) in pq.p.terms() {
                let acted = star.triangle(&h.basis(p[0]), n);
                out.add_scaled(c, &b.algebra().mul(&acted, &v.column(p[1])));
            }
            out
        })
        .collect();
    let theta = LinearMap::from_columns(field, b.dim(), &columns);
    let i0 = i0_map(a)?;
    let mut report = VerificationReport::new();
    report.check("(theta-psi-i0)", &[], &flat(&theta), &flat(&psi.compose(&i0)));
    report.check("(injective)", &[], &rational_flag(theta.rank()), &rational_flag(a.dim()));
    let bv = bv_construction(b.algebra(), v, h)?;
    report.merge(check_module_algebra_morphism(&theta, a, &bv)?);
    Ok((theta, report))
}

/// Recomputes `θ` for a finished decomposition and checks it again.
pub fn theta_map(d: &SmashDecomposition, b: &ComoduleAlgebra, v: &LinearMap) -> Result<LinearMap> {
    let star = StarProduct::new(b, v, &d.e)?;
    let (theta, report) = build_theta(&d.module_algebra, &d.coinvariants, &star, &d.psi, b, v)?;
    ensure_passed("theta", report)?;
    Ok(theta)
}

/// Result of decomposing `A₀ # H` along `j`.
#[derive(Clone, Debug)]
pub struct RoundtripOutcome {
    pub report: VerificationReport,
    /// `a ↦ a#1`, in the coordinates of the recovered `A`.
    pub iso: LinearMap,
    pub decomposition: SmashDecomposition,
}

/// Builds `B = A₀#H`, decomposes it along `j`, and checks that
/// `E(a#h) = ε(h)(a#1)`, `(a#1)*(a'#1) = aa'#1`, `h▷(a#1) = h·a#1` and that
/// `a ↦ a#1` is an isomorphism of module algebras onto the recovered `A`.
/// Failed identities are report content; only construction failures are
/// errors.
pub fn roundtrip(a0: &ModuleAlgebra) -> Result<RoundtripOutcome> {
    let (b, j) = smash_product(a0)?;
    let d = decompose(&b, &j)?;
    let h = a0.hopf();
    let field = a0.field();
    let (da, dh) = (a0.dim(), h.dim());
    let alg = b.algebra();
    let hash_one = |x: &CoordVector| x.tensor(h.one());
    let a_basis: Vec<_> = (0..da).map(|i| a0.carrier().basis(i)).collect();
    let mut report = VerificationReport::new();
    for i in 0..da {
        for k in 0..dh {
            let lhs = d.e.column(i * dh + k);
            let rhs = hash_one(&a_basis[i]).scale(&h.counit_of(&h.basis(k)));
            report.check("(E-smash)", &[i, k], &lhs, &rhs);
        }
    }
    for i in 0..da {
        for k in 0..da {
            let lhs = d.e.apply(&alg.mul(&hash_one(&a_basis[i]), &hash_one(&a_basis[k])));
            report.check("(star-smash)", &[i, k], &lhs, &hash_one(&a0.mul(&a_basis[i], &a_basis[k])));
        }
    }
    for hi in 0..dh {
        for i in 0..da {
            let lhs = d.e.apply(&alg.mul(&j.column(hi), &hash_one(&a_basis[i])));
            let rhs = hash_one(&a0.module().basis_action(hi).apply(&a_basis[i]));
            report.check("(action-smash)", &[hi, i], &lhs, &rhs);
        }
    }
    let mut columns = Vec::with_capacity(da);
    for (i, a) in a_basis.iter().enumerate() {
        match d.coinvariants.subspace().coords_of(&hash_one(a)) {
            Some(c) => columns.push(c),
            None => {
                report.fail("(iso)", &[i], hash_one(a), d.e.apply(&hash_one(a)));
                columns.push(CoordVector::zeros(field, d.module_algebra.dim()));
            }
        }
    }
    let iso = LinearMap::from_columns(field, d.module_algebra.dim(), &columns);
    if iso.src_dim() == iso.dst_dim() {
        report.merge(check_module_algebra_morphism(&iso, a0, &d.module_algebra)?);
    }
    report.check("(iso)", &[], &rational_flag(iso.rank()), &rational_flag(d.module_algebra.dim()));
    report.check("(iso)", &[0], &rational_flag(da), &rational_flag(d.module_algebra.dim()));
    Ok(RoundtripOutcome {
        report,
        iso,
        decomposition: d,
    })
}
