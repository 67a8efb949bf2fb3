//! Computer algebra and desk-scale numerics for noncommutative geometry.

pub mod algebra_core;
pub mod cyclic;
pub mod cyclotomic;
pub mod error;
pub mod instanton;
pub mod linalg;
pub mod poly;
pub mod renorm;
pub mod scalar;
pub mod spectral;
pub mod torus;
pub mod zeta_lab;

pub use cyclotomic::Cyclotomic;
pub use error::{NcgError, Result};
pub use poly::Poly;
pub use scalar::{rat, ComplexScalar, Field, Rational, Scalar, Transcendental};

/// Polynomials in the log-scale symbol `L` with rational coefficients.
pub type RationalPoly = Poly<Rational>;
