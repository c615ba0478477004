//! The contents of the `corpus/` directory, generated from the built-in
//! examples. The checked-in files are compared byte for byte against this.

use std::sync::Arc;

use quasihopf::algebra::TensorElement;
use quasihopf::corpus;
use quasihopf::linalg::{CoordVector, Field, LinearMap};
use quasihopf::quasi_hopf::{QuasiBialgebra, QuasiHopfAlgebra};

use crate::format::{module_algebra_document, morphism_document, quasi_hopf_document, MorphismKind};

/// A corpus file that should fail, and the axiom its report must name.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub path: &'static str,
    pub axiom: &'static str,
}

/// Fixtures that must be rejected with exit code 1.
pub const VIOLATIONS: &[Fixture] = &[
    Fixture { path: "fixtures/h2_pentagon.qha", axiom: "(q3)" },
    Fixture { path: "fixtures/h2_alpha.qha", axiom: "(q6)" },
    Fixture { path: "fixtures/sweedler_coproduct.qha", axiom: "(q2)" },
    Fixture { path: "fixtures/sweedler_antipode.qha", axiom: "(q5)" },
];

/// Fixtures that must be rejected with exit code 2.
pub const MALFORMED: &[&str] = &["fixtures/h2_unknown_field.qha", "fixtures/kz2_index_out_of_range.qha"];

/// `H(2)` with the reassociator coefficient `-2` replaced by `-3`.
fn h2_pentagon() -> QuasiHopfAlgebra {
    let q = Field::Rational;
    let h = corpus::h2(q);
    let half = q.ratio(1, 2).expect("char 0");
    let p = CoordVector::from_scalars(q, vec![half.clone(), -half]);
    let phi = h.unit_tensor(3).sub(&TensorElement::simple(&[&p, &p, &p]).scale(&q.int(3)));
    let base = QuasiBialgebra::new(h.algebra().clone(), h.comul().clone(), h.counit().clone(), phi, None)
        .expect("shapes");
    QuasiHopfAlgebra::new(base, h.antipode().clone(), None, h.alpha().clone(), h.beta().clone()).expect("shapes")
}

/// Sweedler's algebra with `Δ(x) = 2x⊗1 + g⊗x`.
fn sweedler_coproduct() -> QuasiHopfAlgebra {
    let q = Field::Rational;
    let h = corpus::sweedler(q);
    let mut comul = h.comul().clone();
    // basis 1, g, x, gx: x⊗1 sits at row 2*4 + 0
    comul.set(8, 2, q.int(2));
    let base = QuasiBialgebra::new(h.algebra().clone(), comul, h.counit().clone(), h.phi().clone(), None)
        .expect("shapes");
    QuasiHopfAlgebra::new(base, h.antipode().clone(), None, h.alpha().clone(), h.beta().clone()).expect("shapes")
}

/// Sweedler's algebra with `S(x) = +gx`.
fn sweedler_antipode() -> QuasiHopfAlgebra {
    let q = Field::Rational;
    let h = corpus::sweedler(q);
    let mut s = h.antipode().clone();
    s.set(3, 2, q.one());
    QuasiHopfAlgebra::new(h.base().clone(), s, None, h.alpha().clone(), h.beta().clone()).expect("shapes")
}

/// Every corpus file as `(path relative to corpus/, contents)`, sorted.
pub fn corpus_files() -> Vec<(String, String)> {
    let q = Field::Rational;
    let mut out = Vec::new();
    for (name, h) in corpus::all(q) {
        out.push((format!("hopf/{name}.qha"), quasi_hopf_document(&h).to_pretty()));
        let id = LinearMap::identity(q, h.dim());
        let hd = quasi_hopf_document(&h);
        let v = morphism_document(MorphismKind::ComoduleAlgebra, &id, Some(hd.clone()), Some(hd));
        out.push((format!("morphisms/{name}_id.json"), v.to_pretty()));
    }
    for (name, ma) in corpus::module_algebras(q) {
        let file = name.replace('/', "_");
        out.push((format!("module_algebras/{file}.json"), module_algebra_document(&ma).to_pretty()));
    }

    out.push(("fixtures/h2_pentagon.qha".into(), quasi_hopf_document(&h2_pentagon()).to_pretty()));
    let h2 = corpus::h2(q);
    let alpha_one = h2.with_alpha_beta(h2.one().clone(), h2.beta().clone());
    out.push(("fixtures/h2_alpha.qha".into(), quasi_hopf_document(&alpha_one).to_pretty()));
    out.push(("fixtures/sweedler_coproduct.qha".into(), quasi_hopf_document(&sweedler_coproduct()).to_pretty()));
    out.push(("fixtures/sweedler_antipode.qha".into(), quasi_hopf_document(&sweedler_antipode()).to_pretty()));

    // v = ε(·)1 is an algebra map H(2) → H(2) but does not carry Φ to Φ_ρ
    let h2_arc = Arc::new(h2.clone());
    let counit_v = h2.one().tensor(&CoordVector::from_scalars(q, h2.counit().row(0).to_vec()));
    let counit_v = LinearMap::from_row_major(q, 2, 2, counit_v.into_vec()).expect("2x2");
    let hd = quasi_hopf_document(&h2_arc);
    let doc = morphism_document(MorphismKind::Algebra, &counit_v, Some(hd.clone()), Some(hd));
    out.push(("fixtures/h2_counit_v.json".into(), doc.to_pretty()));

    let mut unknown = serde_json::to_value(quasi_hopf_document(&h2)).expect("documents serialize");
    unknown["payload"]["comment"] = serde_json::json!("not part of the schema");
    let mut text = String::new();
    crate::format::render(&unknown, 0, &mut text);
    text.push('\n');
    out.push(("fixtures/h2_unknown_field.qha".into(), text));

    let kz2 = quasi_hopf_document(&corpus::cyclic_group(q, 2)).to_pretty();
    let broken = kz2.replacen("[1,1,0,1,1]", "[1,1,5,1,1]", 1);
    assert_ne!(broken, kz2, "k[Z/2] structure constant g·g = 1 is written as [1,1,0,1,1]");
    out.push(("fixtures/kz2_index_out_of_range.qha".into(), broken));

    out.sort();
    out
}
