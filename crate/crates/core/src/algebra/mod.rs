//! Exact polynomial arithmetic over a prime field under degrevlex, with
//! Gröbner bases, initial ideals and Hilbert functions.

mod field;
mod groebner;
mod ideal;
mod matrix;
mod monomial;
mod polynomial;

pub use field::{PrimeField, DEFAULT_PRIME};
pub use groebner::{groebner, GroebnerBasis, Reducer};
pub use ideal::MonomialIdeal;
pub use matrix::FpMatrix;
pub use monomial::{
    count_monomials, degrevlex_cmp, monomials_of_degree, Monomial, MonomialIndexer, MAX_VARS,
};
pub use polynomial::Polynomial;
