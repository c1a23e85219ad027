//! Exact arithmetic: big rationals, dense polynomials and finite fields.

pub mod field;
pub mod poly;
pub mod rational;

pub use field::{field_elements, find_irreducible, Elem, ExtFieldSpec, FiniteField, DEFAULT_BUDGET};
pub use poly::DensePoly;
pub use rational::{parse_rat, BigRat};
