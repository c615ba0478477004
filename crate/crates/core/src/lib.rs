//! Exact arithmetic for finite-dimensional quasi-Hopf algebras given by
//! structure constants.
//!
//! The crate verifies quasi-bialgebra and quasi-Hopf axioms, builds module
//! algebras, comodule algebras and smash products, and decomposes a right
//! `H`-comodule algebra `B` with a comodule-algebra map `v: H → B` as
//! `B ≅ A # H`, where `A` is the image of the canonical projection `E`.
//!
//! Tensor products are indexed left factor major throughout: `e_i ⊗ f_j`
//! sits at `i * dim(F) + j`.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod quasi_hopf;
pub mod report;
pub mod representations;
pub mod structure_theorem;

pub use error::{Error, Result};
pub use report::{VerificationReport, Violation};
