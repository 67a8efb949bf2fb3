//! λ-twisted polynomial *-algebras and the torus algebra.

pub mod generators;
pub mod json;
pub mod parse;
pub mod phase;
pub mod torus_element;
pub mod twisted;

pub use generators::{Generator, GeneratorSpec, Monomial, RelTerm, Relation, Strategy};
pub use json::{from_json, to_json, JsonCoeff};
pub use parse::{parse_poly, parse_word};
pub use phase::Phase;
pub use torus_element::TorusElement;
pub use twisted::{poly_normal_form, poly_normal_form_random, poly_reduce, TwistedPoly};

/// Product in the torus algebra.
pub fn torus_mul<C: crate::ComplexScalar>(a: &TorusElement<C>, b: &TorusElement<C>) -> crate::Result<TorusElement<C>> {
    a.mul(b)
}

pub fn torus_star<C: crate::ComplexScalar>(a: &TorusElement<C>) -> crate::Result<TorusElement<C>> {
    a.star()
}

pub fn torus_trace<C: crate::ComplexScalar>(a: &TorusElement<C>) -> C {
    a.trace()
}
