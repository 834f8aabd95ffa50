//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod field;
mod monomial;
mod poly;

pub use field::{Field, FieldElement, DEFAULT_PRIME};
pub use monomial::{mono_compare, monomials_of_degree, Monomial, MonomialOrder};
pub use poly::{leading_data, poly_arith, PolyOp, Polynomial, Ring};
