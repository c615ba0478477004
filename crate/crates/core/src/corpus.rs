//! Built-in quasi-Hopf algebras.
//!
//! Every entry is checked by the verifiers in this crate before other tests
//! rely on it; none is assumed correct.

use std::sync::Arc;

use crate::algebra::{BasedAlgebra, TensorElement};
use crate::error::Result;
use crate::linalg::{CoordVector, Field, LinearMap};
use crate::quasi_hopf::{QuasiBialgebra, QuasiHopfAlgebra};
use crate::representations::{bv_construction, ModuleAlgebra};

/// The ground field `k` as a (trivial) Hopf algebra.
pub fn ground(field: Field) -> QuasiHopfAlgebra {
    cyclic_group(field, 1)
}

/// The group algebra `k[Z/n]` with basis `1, g, g2, …`, `Δ(g) = g⊗g`,
/// `S(g) = g⁻¹`, trivial reassociator.
pub fn cyclic_group(field: Field, n: usize) -> QuasiHopfAlgebra {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let constants = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n, field.one())));
    let algebra = BasedAlgebra::new(field, labels, constants, CoordVector::basis(field, n, 0))
        .expect("group algebra");
    let mut comul = LinearMap::zeros(field, n * n, n);
    for i in 0..n {
        comul.set(i * n + i, i, field.one());
    }
    let counit = LinearMap::from_fn(field, 1, n, |_, _| field.one());
    let antipode = LinearMap::from_fn(field, n, n, |r, c| {
        if r == (n - c) % n {
            field.one()
        } else {
            field.zero()
        }
    });
    hopf(algebra, comul, counit, antipode)
}

/// Sweedler's four-dimensional Hopf algebra on the basis `1, g, x, gx` with
/// `g² = 1`, `x² = 0`, `xg = -gx`, `Δ(x) = x⊗1 + g⊗x`, `S(x) = -gx`.
/// Needs characteristic other than 2.
pub fn sweedler(field: Field) -> QuasiHopfAlgebra {
    let labels = ["1", "g", "x", "gx"].map(String::from).to_vec();
    // basis index of g^a x^b is a + 2b
    let mut constants = Vec::new();
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        for (c, d) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            if b + d >= 2 {
                continue;
            }
            let sign = if b * c == 1 { field.int(-1) } else { field.one() };
            constants.push((a + 2 * b, c + 2 * d, (a + c) % 2 + 2 * (b + d), sign));
        }
    }
    let algebra = BasedAlgebra::new(field, labels, constants, CoordVector::basis(field, 4, 0))
        .expect("Sweedler algebra");
    let mut comul = LinearMap::zeros(field, 16, 4);
    let pair = |i: usize, j: usize| i * 4 + j;
    comul.set(pair(0, 0), 0, field.one());
    comul.set(pair(1, 1), 1, field.one());
    comul.set(pair(2, 0), 2, field.one());
    comul.set(pair(1, 2), 2, field.one());
    comul.set(pair(3, 1), 3, field.one());
    comul.set(pair(0, 3), 3, field.one());
    let counit = LinearMap::from_int_rows(field, &[&[1, 1, 0, 0]]);
    let antipode = LinearMap::from_int_rows(
        field,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]],
    );
    hopf(algebra, comul, counit, antipode)
}

/// `k[Z/2]` with `Φ = 1⊗1⊗1 - 2 p⊗p⊗p` where `p = (1 - g)/2`, `S = id`,
/// `α = g`, `β = 1`. A genuinely quasi (non-coassociative up to `Φ ≠ 1`)
/// example; needs characteristic other than 2.
pub fn h2(field: Field) -> QuasiHopfAlgebra {
    let base = cyclic_group(field, 2);
    let half = field.ratio(1, 2).expect("characteristic is not 2");
    let p = CoordVector::from_scalars(field, vec![half.clone(), -half]);
    let ppp = TensorElement::simple(&[&p, &p, &p]);
    let phi = base.unit_tensor(3).sub(&ppp.scale(&field.int(2)));
    let bialgebra = QuasiBialgebra::new(
        base.algebra().clone(),
        base.comul().clone(),
        base.counit().clone(),
        phi.clone(),
        Some(phi),
    )
    .expect("H(2) reassociator");
    QuasiHopfAlgebra::new(
        bialgebra,
        LinearMap::identity(field, 2),
        None,
        CoordVector::basis(field, 2, 1),
        CoordVector::basis(field, 2, 0),
    )
    .expect("H(2)")
}

fn hopf(algebra: BasedAlgebra, comul: LinearMap, counit: LinearMap, antipode: LinearMap) -> QuasiHopfAlgebra {
    let unit = algebra.unit().clone();
    let phi = TensorElement::unit(&[&algebra, &algebra, &algebra]);
    let bialgebra = QuasiBialgebra::new(algebra, comul, counit, phi.clone(), Some(phi)).expect("Hopf algebra shapes");
    QuasiHopfAlgebra::new(bialgebra, antipode, None, unit.clone(), unit).expect("Hopf algebra")
}

/// Every corpus quasi-Hopf algebra, by name.
pub fn all(field: Field) -> Vec<(&'static str, QuasiHopfAlgebra)> {
    vec![
        ("k", ground(field)),
        ("kz2", cyclic_group(field, 2)),
        ("kz4", cyclic_group(field, 4)),
        ("sweedler", sweedler(field)),
        ("h2", h2(field)),
    ]
}

/// `H^{id}`: the module algebra structure on `H` induced by the identity map.
pub fn adjoint_module_algebra(hopf: Arc<QuasiHopfAlgebra>) -> Result<ModuleAlgebra> {
    let id = LinearMap::identity(hopf.field(), hopf.dim());
    bv_construction(hopf.algebra(), &id, &hopf)
}

/// For every corpus quasi-Hopf algebra, the trivial module algebra `k` and
/// `H^{id}`, named `"<H>/k"` and `"<H>/id"`.
pub fn module_algebras(field: Field) -> Vec<(String, ModuleAlgebra)> {
    let mut out = Vec::new();
    for (name, h) in all(field) {
        let h = Arc::new(h);
        out.push((format!("{name}/k"), ModuleAlgebra::trivial(h.clone())));
        let adjoint = adjoint_module_algebra(h).expect("corpus H^{id} verifies");
        out.push((format!("{name}/id"), adjoint));
    }
    out
}
