//! Finite and truncated spectral triples: distances, index pairings, real
//! structures, Dixmier trace estimates and local index coefficients.

pub mod distance;
pub mod dixmier;
pub mod index;
pub mod local_index;
pub mod real;
pub mod triple;

pub use distance::{distance, distance_with, selfadjoint_basis, state_values, DistanceOptions, DistanceReport};
pub use dixmier::{
    circle_inverse_dirac, dirichlet_eigenvalues, dixmier_integral, dixmier_tau, weyl_dart_check, weyl_dart_check_weighted,
    DixmierEstimate, WeylReport, MIN_SCHEDULE_LAMBDA, SCHEDULE_LEN, STABILIZATION_TOL,
};
pub use index::{index_pup, pairing_estimate, AMBIGUITY_TOL, KERNEL_TOL};
pub use local_index::{local_index_coefficient, local_index_rational};
pub use real::{check_real_structure, opposite, Check, RealStructureReport, SignTable, Signs};
pub use triple::{
    circle_relation_residual, circle_shift, circle_triple, circle_triple_with_degree, default_circle_degree,
    spectral_action_count, AlgebraKind, CMat, FiniteSpectralTriple, State, MAX_CIRCLE_N, STRUCTURE_TOL,
};
