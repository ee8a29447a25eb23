//! Exact scalars, polynomials and linear algebra over ℚ.

pub mod det;
pub mod field;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod univariate;

pub use det::poly_matrix_det;
pub use field::{format_rational, parse_rational, rat, ratio, Field, Fp, Fp31, FpA, FpB, Rational};
pub use matrix::{kernel, rank, rref_exact, solve_exact, Matrix, QMatrix};
pub use monomial::{homogeneous_dim, monomial_basis, BasisCache, Exponent, MonomialBasis};
pub use poly::{poly_mul, variable_names, Poly};
pub use univariate::UniPoly;
