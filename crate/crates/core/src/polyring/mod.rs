//! Exact multivariate polynomial arithmetic over `F_p`.

mod division;
mod field;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub(crate) use division::reduce;
pub use division::{divide, divide_in, normal_form, Division};
pub use field::{PrimeField, PrimeFieldElement};
pub use monomial::Monomial;
pub use order::{compare_monomials, MonomialOrder};
pub use poly::{leading_term, poly_arith, PolyOp, Polynomial, Term};
pub use ring::Ring;
