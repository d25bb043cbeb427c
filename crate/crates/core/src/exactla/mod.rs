//! Exact rational arithmetic and dense linear algebra.

mod matrix;
mod scalar;
mod sparse;
pub mod vector;

pub use matrix::{coordinates, in_span, span_basis, ImageBasis, Matrix, Rref};
pub use scalar::{ParseScalarError, Scalar};
pub use sparse::{compress, Accumulator, SparseMatrix, SparseVec};
pub use vector::Vector;
