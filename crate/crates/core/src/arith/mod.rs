//! Exact scalars, sparse polynomials, polynomial matrices, Pfaffians and field linear algebra.

pub mod linalg;
pub mod matrix;
mod parse;
pub mod poly;
pub mod scalar;

pub use linalg::{rank_kernel, same_span, span_rank, FieldMatrix, Rref};
pub use matrix::{
    pfaffian, principal_pfaffian, signed_submaximal_pfaffians, submaximal_pfaffians, Matrix, SignFlag, COFACTOR_LIMIT,
};
pub use poly::{same_ring, Monomial, Poly, Ring, RingRef};
pub use scalar::{Field, Scalar};
