use std::sync::Arc;

use proptest::prelude::*;
use quasihopf::algebra::{invert_element, multiply, AlgebraElement};
use quasihopf::corpus;
use quasihopf::linalg::{image_basis, kron, solve_linear, CoordVector, Field, LinearMap, Subspace};
use quasihopf::representations::{smash_product, verify_module_algebra};
use quasihopf::structure_theorem::decompose;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7)), Just(Field::Prime(101))]
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(-4i64..=4, rows * cols)
        .prop_map(move |v| LinearMap::from_fn(field, rows, cols, |r, c| field.int(v[r * cols + c])))
}

fn vector(field: Field, dim: usize) -> impl Strategy<Value = CoordVector> {
    prop::collection::vec(-5i64..=5, dim).prop_map(move |v| CoordVector::from_ints(field, &v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative((f, g, h) in fields().prop_flat_map(|k| (matrix(k, 2, 1), matrix(k, 1, 2), matrix(k, 2, 2)))) {
        prop_assert_eq!(kron(&kron(&f, &g), &h), kron(&f, &kron(&g, &h)));
    }

    #[test]
    fn kron_respects_composition((a, b, c, d) in fields().prop_flat_map(|k| (matrix(k, 2, 3), matrix(k, 3, 2), matrix(k, 2, 2), matrix(k, 2, 1)))) {
        prop_assert_eq!(kron(&a, &c).compose(&kron(&b, &d)), kron(&a.compose(&b), &c.compose(&d)));
    }

    #[test]
    fn image_basis_is_idempotent(m in fields().prop_flat_map(|k| matrix(k, 4, 5))) {
        let basis = image_basis(&m);
        prop_assert_eq!(basis.len(), m.rank());
        let again = image_basis(&LinearMap::from_columns(m.field(), 4, &basis));
        prop_assert_eq!(again, basis);
    }

    #[test]
    fn kernel_and_image_dimensions(m in fields().prop_flat_map(|k| matrix(k, 3, 5))) {
        let kernel = Subspace::kernel_of(&m);
        prop_assert_eq!(kernel.dim() + m.rank(), 5);
        for v in kernel.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn solutions_reproduce_the_right_hand_side((m, x) in fields().prop_flat_map(|k| (matrix(k, 4, 3), vector(k, 3)))) {
        let rhs = m.apply(&x);
        let sol = solve_linear(&m, &rhs).unwrap().expect("rhs is in the image");
        prop_assert_eq!(m.apply(&sol), rhs);
    }

    #[test]
    fn inverse_is_an_involution(m in fields().prop_flat_map(|k| matrix(k, 3, 3))) {
        if let Some(inv) = m.inverse() {
            prop_assert!(m.compose(&inv).is_identity());
            prop_assert_eq!(inv.inverse().unwrap(), m);
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn sweedler_multiplication_is_bilinear((field, x, y, z, c) in fields().prop_flat_map(|k| (Just(k), vector(k, 4), vector(k, 4), vector(k, 4), -3i64..=3))) {
        let h = corpus::sweedler(field);
        let a = h.algebra();
        let c = field.int(c);
        prop_assert_eq!(a.mul(&x.add(&y.scale(&c)), &z), a.mul(&x, &z).add(&a.mul(&y, &z).scale(&c)));
        prop_assert_eq!(a.mul(&z, &x.add(&y.scale(&c))), a.mul(&z, &x).add(&a.mul(&z, &y).scale(&c)));
    }

    #[test]
    fn element_inverse_is_an_involution((field, x) in fields().prop_flat_map(|k| (Just(k), vector(k, 4)))) {
        let h = corpus::sweedler(field);
        let a = AlgebraElement::new(h.algebra(), x).unwrap();
        if let Ok(inv) = invert_element(&a) {
            prop_assert_eq!(multiply(&a, &inv).unwrap(), AlgebraElement::unit(h.algebra()));
            prop_assert_eq!(invert_element(&inv).unwrap(), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn decomposition_is_invariant_under_change_of_basis(
        field in prop_oneof![Just(Field::Rational), Just(Field::Prime(7))],
        entries in prop::collection::vec(-2i64..=2, 16),
    ) {
        let h = Arc::new(corpus::h2(field));
        let a0 = corpus::adjoint_module_algebra(h).unwrap();
        let (b, j) = smash_product(&a0).unwrap();
        let p = LinearMap::from_fn(field, 4, 4, |r, c| field.int(entries[r * 4 + c]));
        prop_assume!(p.inverse().is_some());
        let (moved, p_inv) = b.transport(&p).unwrap();
        let d = decompose(&moved, &p_inv.compose(&j)).unwrap();
        prop_assert_eq!(d.module_algebra.dim(), a0.dim());
        prop_assert!(verify_module_algebra(&d.module_algebra).passed());
        prop_assert_eq!(d.theta.rank(), a0.dim());
    }
}
