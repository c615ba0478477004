use crate::algebra::TensorElement;
use crate::error::Result;
use crate::linalg::CoordVector;
use crate::report::VerificationReport;

use super::QuasiHopfAlgebra;

/// The canonical elements `p_R, q_R ∈ H⊗H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQElements {
    pub p: TensorElement,
    pub q: TensorElement,
}

/// `p_R = x¹ ⊗ x²βS(x³)` and `q_R = X¹ ⊗ S⁻¹(αX³)X²`.
pub fn compute_pq(h: &QuasiHopfAlgebra) -> Result<PQElements> {
    let d = h.dim();
    let field = h.field();
    let e = |i: usize| h.basis(i);
    let mut p = TensorElement::zero(field, &[d, d]);
    for (x, c) in h.phi_inv().terms() {
        let right = h.product(&[&e(x[1]), h.beta(), &h.s(&e(x[2]))]);
        p.add_simple(c, &[&e(x[0]), &right]);
    }
    let mut q = TensorElement::zero(field, &[d, d]);
    for (x, c) in h.phi().terms() {
        let right = h.mul(&h.s_inv(&h.mul(h.alpha(), &e(x[2])))?, &e(x[1]));
        q.add_simple(c, &[&e(x[0]), &right]);
    }
    Ok(PQElements { p, q })
}

/// Both halves of (unu), both relations of (trei) for every basis `h`,
/// and (cucu) `q¹βS(q²) = 1`.
pub fn verify_pq_identities(h: &QuasiHopfAlgebra, pq: &PQElements) -> VerificationReport {
    let mut report = VerificationReport::new();
    let d = h.dim();
    let field = h.field();
    let two = h.legs(2);
    let e = |i: usize| h.basis(i);
    let unit2 = h.unit_tensor(2);
    let s_inv = |x: &CoordVector| h.s_inv(x);
    if h.antipode_inv().is_none() {
        report.fail(
            "(antipode-inv)",
            &[],
            CoordVector::zeros(field, 1),
            CoordVector::basis(field, 1, 0),
        );
        return report;
    }

    // (unu): q¹₁p¹ ⊗ q¹₂p²S(q²) = 1⊗1
    let q_split = h.comul_leg(&pq.q, 0);
    let mut lhs = TensorElement::zero(field, &[d, d]);
    for (qi, c) in q_split.terms() {
        for (pi, c2) in pq.p.terms() {
            let left = h.mul(&e(qi[0]), &e(pi[0]));
            let right = h.product(&[&e(qi[1]), &e(pi[1]), &h.s(&e(qi[2]))]);
            lhs.add_simple(&(c * c2), &[&left, &right]);
        }
    }
    report.check("(unu)", &[0], lhs.coords(), unit2.coords());

    // (unu): q¹p¹₁ ⊗ S⁻¹(p²)q²p¹₂ = 1⊗1
    let p_split = h.comul_leg(&pq.p, 0);
    let mut lhs = TensorElement::zero(field, &[d, d]);
    for (qi, c) in pq.q.terms() {
        for (pi, c2) in p_split.terms() {
            let left = h.mul(&e(qi[0]), &e(pi[0]));
            let right = h.product(&[&s_inv(&e(pi[2])).expect("checked above"), &e(qi[1]), &e(pi[1])]);
            lhs.add_simple(&(c * c2), &[&left, &right]);
        }
    }
    report.check("(unu)", &[1], lhs.coords(), unit2.coords());

    // (trei): Δ(h₁)p_R[1⊗S(h₂)] = p_R[h⊗1] and [1⊗S⁻¹(h₂)]q_RΔ(h₁) = [h⊗1]q_R
    for i in 0..d {
        let b = e(i);
        let mut lhs_p = TensorElement::zero(field, &[d, d]);
        let mut lhs_q = TensorElement::zero(field, &[d, d]);
        for (idx, c) in h.comultiply(&b).terms() {
            let h1 = h.comultiply(&e(idx[0]));
            let s_h2 = TensorElement::simple(&[h.one(), &h.s(&e(idx[1]))]);
            let term = h1.mul(&pq.p, &two).mul(&s_h2, &two);
            lhs_p = lhs_p.add(&term.scale(c));
            let s_inv_h2 = TensorElement::simple(&[h.one(), &s_inv(&e(idx[1])).expect("checked above")]);
            let term = s_inv_h2.mul(&pq.q, &two).mul(&h1, &two);
            lhs_q = lhs_q.add(&term.scale(c));
        }
        let h_one = TensorElement::simple(&[&b, h.one()]);
        report.check("(trei)", &[i, 0], lhs_p.coords(), pq.p.mul(&h_one, &two).coords());
        report.check("(trei)", &[i, 1], lhs_q.coords(), h_one.mul(&pq.q, &two).coords());
    }

    // (cucu): q¹βS(q²) = 1
    let mut cucu = CoordVector::zeros(field, d);
    for (qi, c) in pq.q.terms() {
        cucu.add_scaled(c, &h.product(&[&e(qi[0]), h.beta(), &h.s(&e(qi[1]))]));
    }
    report.check("(cucu)", &[], &cucu, h.one());
    report
}

/// Left side of the three-leg identity
/// `q¹₁t¹x¹ ⊗ q¹₍₂,₁₎t²₁z¹x² ⊗ q¹₍₂,₂₎t²₂z²βS(q²t³z³)x³`, contracting three
/// independent copies of `Φ⁻¹` (`t`, `z`, `x`) with the iterated coproduct of `q¹`.
pub fn lemma3_lhs(h: &QuasiHopfAlgebra, pq: &PQElements) -> TensorElement {
    let d = h.dim();
    let field = h.field();
    let e = |i: usize| h.basis(i);
    // q¹₁ ⊗ q¹₍₂,₁₎ ⊗ q¹₍₂,₂₎ ⊗ q²
    let q4 = h.comul_leg(&h.comul_leg(&pq.q, 0), 1);
    // t¹ ⊗ t²₁ ⊗ t²₂ ⊗ t³
    let t4 = h.comul_leg(h.phi_inv(), 1);
    let phi_inv: Vec<_> = h.phi_inv().terms().map(|(i, c)| (i, c.clone())).collect();
    let t_terms: Vec<_> = t4.terms().map(|(i, c)| (i, c.clone())).collect();

    let mut out = TensorElement::zero(field, &[d, d, d]);
    for (q, cq) in q4.terms() {
        for (t, ct) in &t_terms {
            let cqt = cq * ct;
            // q²t³ is shared by every z, x
            let q2t3 = h.mul(&e(q[3]), &e(t[3]));
            for (z, cz) in &phi_inv {
                let cqtz = &cqt * cz;
                let first_left = h.mul(&e(q[0]), &e(t[0]));
                let second_left = h.product(&[&e(q[1]), &e(t[1]), &e(z[0])]);
                let s_part = h.s(&h.mul(&q2t3, &e(z[2])));
                let third_left = h.product(&[&e(q[2]), &e(t[2]), &e(z[1]), h.beta(), &s_part]);
                for (x, cx) in &phi_inv {
                    let a = h.mul(&first_left, &e(x[0]));
                    let b = h.mul(&second_left, &e(x[1]));
                    let c = h.mul(&third_left, &e(x[2]));
                    out.add_simple(&(&cqtz * cx), &[&a, &b, &c]);
                }
            }
        }
    }
    out
}

/// Evaluates [`lemma3_lhs`] and compares it with `1⊗1⊗1`.
pub fn verify_lemma3(h: &QuasiHopfAlgebra) -> Result<VerificationReport> {
    let pq = compute_pq(h)?;
    let mut report = VerificationReport::new();
    report.check("(lema3)", &[], lemma3_lhs(h, &pq).coords(), h.unit_tensor(3).coords());
    Ok(report)
}
