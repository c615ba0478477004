use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::verify_associative_unital;
use crate::corpus;

const Q: Field = Field::Rational;
const GF7: Field = Field::Prime(7);

fn arc(h: QuasiHopfAlgebra) -> Arc<QuasiHopfAlgebra> {
    Arc::new(h)
}

fn adjoint(h: QuasiHopfAlgebra) -> ModuleAlgebra {
    corpus::adjoint_module_algebra(arc(h)).unwrap()
}

fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> LinearMap {
    loop {
        let m = LinearMap::from_fn(field, n, n, |_, _| field.int(rng.gen_range(-3..=3)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

#[test]
fn corpus_module_algebras_verify() {
    for field in [Q, GF7] {
        for (name, ma) in corpus::module_algebras(field) {
            let report = verify_module_algebra(&ma);
            assert!(report.passed(), "{name} over {field}:\n{report}");
            for axiom in ["(module)", "(unit)", "(ma1)", "(ma2)", "(ma3)"] {
                assert!(report.has_checked(axiom), "{name}: {axiom}");
            }
        }
    }
}

#[test]
fn bv_in_the_hopf_case_keeps_the_product() {
    for h in [corpus::sweedler(Q), corpus::cyclic_group(Q, 4)] {
        let ma = adjoint(h.clone());
        assert_eq!(ma.carrier(), h.algebra());
        assert_eq!(ma.unit(), h.one());
    }
}

#[test]
fn bv_for_h2_by_hand() {
    // H(2) is commutative and S = id, so b∘b' = (Ω¹Ω²Ω³)bb' and h▷b = h₁h₂b.
    // Ω¹Ω²Ω³ = α·(X¹X²X³₁X³₂)(x¹x²x³) = g·1·(1 - 2p) = g·g = 1, using
    // m(Δ(p)) = (1 - g²)/2 = 0, and g▷b = gbg = b.
    let h = corpus::h2(Q);
    let ma = adjoint(h.clone());
    assert_eq!(ma.unit(), h.beta());
    assert_eq!(ma.carrier(), h.algebra());
    assert_eq!(ma.module().basis_action(1), &LinearMap::identity(Q, 2));
}

#[test]
fn bv_unit_is_invariant() {
    for (name, h) in corpus::all(Q) {
        let ma = adjoint(h.clone());
        for i in 0..h.dim() {
            let acted = ma.act(&h.basis(i), ma.unit());
            assert_eq!(acted, ma.unit().scale(&h.counit_of(&h.basis(i))), "{name}, h = e{i}");
        }
    }
}

#[test]
fn bv_rejects_non_algebra_maps() {
    let h = arc(corpus::sweedler(Q));
    let zero = LinearMap::zeros(Q, 4, 4);
    assert!(matches!(bv_construction(h.algebra(), &zero, &h), Err(Error::Precondition(_))));
}

#[test]
fn ma1_perturbation_is_named() {
    let ma = adjoint(corpus::h2(Q));
    // 1·g = g + 1 instead of g
    let mut triples: Vec<_> = ma.carrier().structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    triples.push((0, 1, 0, Q.one()));
    let carrier = BasedAlgebra::new(Q, ma.carrier().labels().to_vec(), triples, ma.unit().clone()).unwrap();
    let bad = ma.with_carrier(carrier).unwrap();
    let report = verify_module_algebra(&bad);
    assert!(report.violates("(ma1)"), "{report}");
    let witness = &report.violations().iter().find(|v| v.axiom == "(ma1)").unwrap().witness;
    assert_eq!(witness.len(), 3);
}

#[test]
fn regular_comodule_algebras_verify() {
    for field in [Q, GF7] {
        for (name, h) in corpus::all(field) {
            let report = verify_comodule_algebra(&ComoduleAlgebra::regular(arc(h)));
            assert!(report.passed(), "{name} over {field}:\n{report}");
            for axiom in ["(rho-alg)", "(rca1)", "(rca2)", "(rca3)", "(rca4)"] {
                assert!(report.has_checked(axiom));
            }
        }
    }
}

#[test]
fn trivial_phi_rho_over_h2_breaks_rca2() {
    // Δ on k[Z/2] is coassociative, so (rca1) survives; (rca2) then demands Φ = 1.
    let h = arc(corpus::h2(Q));
    let one = h.unit_tensor(3);
    let ca = ComoduleAlgebra::new(h.clone(), h.algebra().clone(), h.comul().clone(), one, None).unwrap();
    let report = verify_comodule_algebra(&ca);
    assert!(report.violates("(rca2)"), "{report}");
    assert!(!report.violates("(rca1)"));
}

#[test]
fn smash_with_the_ground_field_is_h() {
    for (name, h) in corpus::all(Q) {
        let h = arc(h);
        let (smash, j) = smash_product(&ModuleAlgebra::trivial(h.clone())).unwrap();
        let constants = |a: &BasedAlgebra| a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect::<Vec<_>>();
        assert_eq!(constants(smash.algebra()), constants(h.algebra()), "{name}");
        assert_eq!(smash.coaction(), h.comul());
        assert_eq!(smash.phi_rho(), h.phi());
        assert!(j.is_identity());
    }
}

#[test]
fn smash_of_every_corpus_module_algebra_verifies() {
    for field in [Q, GF7] {
        for (name, ma) in corpus::module_algebras(field) {
            let (smash, j) = smash_product(&ma).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(smash.dim(), ma.dim() * ma.hopf().dim());
            assert!(verify_associative_unital(smash.algebra()).passed());
            assert!(verify_comodule_algebra(&smash).passed());
            let regular = ComoduleAlgebra::regular(ma.hopf().clone());
            assert!(check_comodule_algebra_morphism(&j, &regular, &smash).unwrap().passed());
        }
    }
}

#[test]
fn smash_counit_collapse() {
    // (id⊗ε)((a#h)(a'#h')) = a(h·a')ε(h') since (id⊗id⊗ε)(Φ⁻¹) = 1⊗1
    for (name, ma) in corpus::module_algebras(Q) {
        let h = ma.hopf();
        let (smash, _) = smash_product(&ma).unwrap();
        let (da, dh) = (ma.dim(), h.dim());
        for i in 0..da {
            for k in 0..dh {
                for j in 0..da {
                    for l in 0..dh {
                        let prod = smash.algebra().mul(&smash.algebra().basis(i * dh + k), &smash.algebra().basis(j * dh + l));
                        let t = TensorElement::new(vec![da, dh], prod).unwrap();
                        let lhs = h.counit_leg(&t, 1).into_coords();
                        let a = ma.carrier().basis(i);
                        let acted = ma.module().basis_action(k).apply(&ma.carrier().basis(j));
                        let rhs = ma.mul(&a, &acted).scale(&h.counit_of(&h.basis(l)));
                        assert_eq!(lhs, rhs, "{name} ({i},{k})({j},{l})");
                    }
                }
            }
        }
    }
}

#[test]
fn comodule_morphism_checks() {
    let h = arc(corpus::cyclic_group(Q, 4));
    let regular = ComoduleAlgebra::regular(h.clone());
    let id = LinearMap::identity(Q, 4);
    assert!(check_comodule_algebra_morphism(&id, &regular, &regular).unwrap().passed());
    // swap g and g2
    let swap = LinearMap::from_int_rows(Q, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let report = check_comodule_algebra_morphism(&swap, &regular, &regular).unwrap();
    assert!(report.violates("(comodule-morphism)"), "{report}");
    let wrong = LinearMap::identity(Q, 3);
    assert!(check_comodule_algebra_morphism(&wrong, &regular, &regular).is_err());
}

#[test]
fn transport_of_structure_preserves_the_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in [Q, GF7] {
        let (smash, _) = smash_product(&adjoint(corpus::h2(field))).unwrap();
        for _ in 0..3 {
            let p = random_invertible(field, smash.dim(), &mut rng);
            let (moved, p_inv) = smash.transport(&p).unwrap();
            assert!(verify_associative_unital(moved.algebra()).passed());
            assert!(verify_comodule_algebra(&moved).passed());
            assert!(check_comodule_algebra_morphism(&p_inv, &smash, &moved).unwrap().passed());
            assert!(check_comodule_algebra_morphism(&p, &moved, &smash).unwrap().passed());
        }
    }
}

#[test]
fn i0_in_the_hopf_case_is_a_tensor_one() {
    let ma = adjoint(corpus::sweedler(Q));
    let i0 = i0_map(&ma).unwrap();
    let h = ma.hopf();
    for i in 0..4 {
        assert_eq!(i0.column(i), ma.carrier().basis(i).tensor(h.one()));
    }
}

#[test]
fn i0_for_h2() {
    let ma = adjoint(corpus::h2(Q));
    let i0 = i0_map(&ma).unwrap();
    assert_eq!(i0.rank(), 2);
    // for A = k, i_0(1) is the unit j(β) of (k#H)^j
    let trivial = ModuleAlgebra::trivial(ma.hopf().clone());
    let i0 = i0_map(&trivial).unwrap();
    let (smash, j) = smash_product(&trivial).unwrap();
    let target = bv_construction(smash.algebra(), &j, ma.hopf()).unwrap();
    assert_eq!(&i0.column(0), target.unit());
}

#[test]
fn i0_is_injective_everywhere() {
    for field in [Q, GF7] {
        for (name, ma) in corpus::module_algebras(field) {
            let i0 = i0_map(&ma).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(i0.rank(), ma.dim(), "{name}");
        }
    }
}

#[test]
fn lemma1_on_verified_module_algebras() {
    for (name, ma) in corpus::module_algebras(Q) {
        let outcome = lemma1_check(&ma).unwrap();
        assert!(outcome.associativity.passed(), "{name}");
        assert!(outcome.ma1.passed() && outcome.ma2.passed());
        assert!(outcome.consistent());
        assert!(outcome.report().passed());
    }
}

#[test]
fn lemma1_on_a_broken_action() {
    // k[Z/2] acting on H(2)^{id} through g ↦ -id is a module action, but
    // g·(1·1) = -1 ≠ (g·1)(g·1) = 1 violates (ma2) and (ma3).
    let ma = adjoint(corpus::h2(Q));
    let h = ma.hopf().clone();
    let action = LinearMap::from_int_rows(Q, &[&[1, 0, -1, 0], &[0, 1, 0, -1]]);
    let bad = ModuleAlgebra::new(h, ma.carrier().clone(), action).unwrap();
    let outcome = lemma1_check(&bad).unwrap();
    assert!(!outcome.ma2.passed());
    assert!(!outcome.associativity.passed());
    assert!(outcome.consistent());
    assert!(outcome.report().violates("(ma2)"));
    assert!(!outcome.report().violates("(lulu)"));
}

#[test]
fn lemma1_detects_ma1_failure_through_associativity() {
    let ma = adjoint(corpus::h2(Q));
    let mut triples: Vec<_> = ma.carrier().structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    triples.push((0, 1, 0, Q.one()));
    let carrier = BasedAlgebra::new(Q, ma.carrier().labels().to_vec(), triples, ma.unit().clone()).unwrap();
    let outcome = lemma1_check(&ma.with_carrier(carrier).unwrap()).unwrap();
    assert!(!outcome.ma1.passed());
    assert!(!outcome.associativity.passed());
    assert!(outcome.consistent());
}

#[test]
fn module_algebra_morphisms() {
    let ma = adjoint(corpus::sweedler(Q));
    let id = LinearMap::identity(Q, 4);
    assert!(check_module_algebra_morphism(&id, &ma, &ma).unwrap().passed());
    let twice = id.scale(&Q.int(2));
    let report = check_module_algebra_morphism(&twice, &ma, &ma).unwrap();
    assert!(report.violates("(morphism-unit)"));
    assert!(!report.violates("(H-linear)"));
}
