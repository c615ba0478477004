use std::sync::Arc;

use crate::algebra::{verify_associative_unital, BasedAlgebra, TensorElement};
use crate::error::{ensure_passed, Result};
use crate::linalg::{CoordVector, LinearMap, Scalar};
use crate::quasi_hopf::QuasiHopfAlgebra;
use crate::report::VerificationReport;

use super::{
    check_comodule_algebra_morphism, check_ma1, check_ma2, check_ma3, check_unit, verify_comodule_algebra,
    verify_left_module, ComoduleAlgebra, LeftModule,
};

type Terms = Vec<(Vec<usize>, Scalar)>;

fn owned_terms(t: &TensorElement) -> Terms {
    t.terms().map(|(i, c)| (i, c.clone())).collect()
}

/// The multiplication on `A ⊗ H`
/// `(a#h)(a'#h') = (x¹·a)(x²h₁·a') # x³h₂h'`, with basis `a_i#h_k` at
/// index `i·dim H + k` and unit `1_A#1_H`. Nothing about `A` beyond a
/// bilinear product and a linear action is assumed.
pub fn smash_algebra(hopf: &QuasiHopfAlgebra, carrier: &BasedAlgebra, module: &LeftModule) -> Result<BasedAlgebra> {
    let (da, dh) = (carrier.dim(), hopf.dim());
    let field = hopf.field();
    let e = |i: usize| hopf.basis(i);
    let phi_inv = owned_terms(hopf.phi_inv());
    let deltas: Vec<Terms> = (0..dh).map(|k| owned_terms(&hopf.comultiply(&e(k)))).collect();
    let a_basis: Vec<_> = (0..da).map(|i| carrier.basis(i)).collect();

    let mut table = vec![CoordVector::zeros(field, da * dh); da * dh * da * dh];
    for i in 0..da {
        for k in 0..dh {
            // (x¹·a_i) ⊗ x²h₁ ⊗ x³h₂ does not depend on the right factor
            let mut left = Vec::new();
            for (x, c) in &phi_inv {
                let xa = module.basis_action(x[0]).apply(&a_basis[i]);
                for (d, cd) in &deltas[k] {
                    let mid = module.action_matrix(&hopf.mul(&e(x[1]), &e(d[0])));
                    let right = hopf.mul(&e(x[2]), &e(d[1]));
                    left.push((c * cd, xa.clone(), mid, right));
                }
            }
            for j in 0..da {
                let mut acted = Vec::with_capacity(left.len());
                for (c, xa, mid, right) in &left {
                    acted.push((c, carrier.mul(xa, &mid.apply(&a_basis[j])), right));
                }
                for l in 0..dh {
                    let mut out = TensorElement::zero(field, &[da, dh]);
                    for (c, prod, right) in &acted {
                        out.add_simple(c, &[prod, &hopf.mul(right, &e(l))]);
                    }
                    table[(i * dh + k) * da * dh + j * dh + l] = out.into_coords();
                }
            }
        }
    }
    let labels = carrier
        .labels()
        .iter()
        .flat_map(|a| hopf.algebra().labels().iter().map(move |h| format!("{a}#{h}")))
        .collect();
    let unit = carrier.unit().tensor(hopf.one());
    let n = da * dh;
    BasedAlgebra::from_fn(field, labels, |r, c| table[r * n + c].clone(), unit)
}

/// The smash product `A#H` as a right `H`-comodule algebra with
/// `ρ(a#h) = (x¹·a#x²h₁) ⊗ x³h₂` and `Φ_ρ = (1#X¹) ⊗ X² ⊗ X³`, together
/// with `j: H → A#H`, `j(h) = 1#h`. Associativity, the comodule algebra
/// axioms and the morphism property of `j` are all checked before returning.
pub fn smash_product(ma: &super::ModuleAlgebra) -> Result<(ComoduleAlgebra, LinearMap)> {
    let hopf: &Arc<QuasiHopfAlgebra> = ma.hopf();
    let (da, dh) = (ma.dim(), hopf.dim());
    let field = ma.field();
    let e = |i: usize| hopf.basis(i);
    let algebra = smash_algebra(hopf, ma.carrier(), ma.module())?;
    let mut report = verify_associative_unital(&algebra);

    let phi_inv = owned_terms(hopf.phi_inv());
    let mut columns = Vec::with_capacity(da * dh);
    for i in 0..da {
        let a = ma.carrier().basis(i);
        for k in 0..dh {
            let mut out = TensorElement::zero(field, &[da, dh, dh]);
            for (x, c) in &phi_inv {
                let xa = ma.module().basis_action(x[0]).apply(&a);
                for (d, cd) in hopf.comultiply(&e(k)).terms() {
                    let mid = hopf.mul(&e(x[1]), &e(d[0]));
                    let right = hopf.mul(&e(x[2]), &e(d[1]));
                    out.add_simple(&(c * cd), &[&xa, &mid, &right]);
                }
            }
            columns.push(out.into_coords());
        }
    }
    let coaction = LinearMap::from_columns(field, da * dh * dh, &columns);
    let one_a = TensorElement::simple(&[ma.unit()]);
    let phi_rho = one_a.tensor(hopf.phi()).reshape(vec![da * dh, dh, dh]);
    let phi_rho_inv = one_a.tensor(hopf.phi_inv()).reshape(vec![da * dh, dh, dh]);
    let smash = ComoduleAlgebra::new(hopf.clone(), algebra, coaction, phi_rho, Some(phi_rho_inv))?;
    report.merge(verify_comodule_algebra(&smash));

    let j = LinearMap::from_columns(field, da * dh, &(0..dh).map(|k| ma.unit().tensor(&e(k))).collect::<Vec<_>>());
    report.merge(check_comodule_algebra_morphism(&j, &ComoduleAlgebra::regular(hopf.clone()), &smash)?);
    ensure_passed("smash product", report)?;
    Ok((smash, j))
}

/// Result of comparing associativity of `A⊗H` under the smash formula with
/// axioms (ma1) and (ma2) for a unital module with (ma3).
#[derive(Clone, Debug)]
pub struct Lemma1Outcome {
    pub associativity: VerificationReport,
    pub ma1: VerificationReport,
    pub ma2: VerificationReport,
    pub preconditions: VerificationReport,
}

impl Lemma1Outcome {
    /// Associativity forces (ma1) and (ma2); conversely, with a unit
    /// satisfying (ma3), those two axioms make the multiplication associative.
    pub fn consistent(&self) -> bool {
        let axioms = self.ma1.passed() && self.ma2.passed();
        let forward = !self.associativity.passed() || axioms;
        let backward = !self.preconditions.passed() || !axioms || self.associativity.passed();
        forward && backward
    }

    /// All sub-reports merged, plus a `(lulu)` entry that fails when the
    /// outcome is not [`consistent`](Self::consistent).
    pub fn report(&self) -> VerificationReport {
        let mut out = self.preconditions.clone();
        out.merge(self.associativity.clone());
        out.merge(self.ma1.clone());
        out.merge(self.ma2.clone());
        let flag = |b: bool| CoordVector::from_ints(crate::linalg::Field::Rational, &[b as i64]);
        out.check(
            "(lulu)",
            &[],
            &flag(self.consistent()),
            &flag(true),
        );
        out
    }
}

/// Evaluates both sides of the equivalence between associativity of the
/// smash multiplication and the module algebra axioms (ma1), (ma2).
pub fn lemma1_check(ma: &super::ModuleAlgebra) -> Result<Lemma1Outcome> {
    let mut preconditions = verify_left_module(ma.module());
    check_unit(ma, &mut preconditions);
    check_ma3(ma, &mut preconditions);
    let algebra = smash_algebra(ma.hopf(), ma.carrier(), ma.module())?;
    let associativity = verify_associative_unital(&algebra);
    let mut ma1 = VerificationReport::new();
    check_ma1(ma, &mut ma1);
    let mut ma2 = VerificationReport::new();
    check_ma2(ma, &mut ma2);
    Ok(Lemma1Outcome {
        associativity,
        ma1,
        ma2,
        preconditions,
    })
}
