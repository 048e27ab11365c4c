//! Exact scalars, matrices and polynomials.
//!
//! No floating point is used anywhere. Elimination is fraction-free (Bareiss)
//! over ℚ and plain Gaussian elimination over the other fields.

mod field;
mod matrix;
mod parse;
mod poly;
pub mod qpoly;
mod scalar;
pub mod sparse;

pub use field::Field;
pub use matrix::Matrix;
pub use poly::{peel_roots, rational_roots, Poly, RootPeeling};
pub use qpoly::QPoly;
pub use scalar::{sum, Cyclo, Fp, RatFunc, Scalar};
pub use sparse::{Echelon, SparseVec};

/// Rank of a matrix by exact elimination.
pub fn mat_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Inverse of a square matrix, or [`crate::Error::SingularMatrix`].
pub fn mat_inverse(m: &Matrix) -> crate::Result<Matrix> {
    m.inverse()
}

/// Characteristic polynomial `det(xI - m)`.
pub fn char_poly(m: &Matrix) -> crate::Result<Poly> {
    m.char_poly()
}
