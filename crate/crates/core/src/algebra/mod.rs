//! Structure-constant algebras, their tensor products and morphism checks.

mod based;
mod tensor;

pub use based::{
    check_algebra_morphism, invert_element, multiply, tensor_algebra, verify_associative_unital, AlgebraElement,
    BasedAlgebra,
};
pub(crate) use based::convert_vector;
pub use tensor::TensorElement;
