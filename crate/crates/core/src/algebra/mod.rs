//! Exact scalars, multivariate polynomials and graded linear algebra over
//! `QQ`, `ZZ` and `ZZ/p`.

mod matrix;
mod poly;
mod polymatrix;
mod scalar;

pub use matrix::{cokernel_basis, kernel, rank, Quotient, ScalarMatrix};
pub use poly::{count_monomials, monomials_of_degree, poly_arith, Monomial, PolyOp, Polynomial};
pub use polymatrix::{clear_denominators_column, graded_piece, reduce_mod_p, PolyMatrix, PolyMatrixJson, RingJson};
pub use scalar::{is_prime, Domain, Scalar};
