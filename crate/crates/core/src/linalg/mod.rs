//! Exact scalars, coordinate vectors and dense linear maps.

mod matrix;
mod scalar;
mod vector;

pub use matrix::{image_basis, kron, solve_linear, LinearMap, Subspace};
pub use scalar::{rational_parts, Field, Scalar};
pub use vector::CoordVector;
