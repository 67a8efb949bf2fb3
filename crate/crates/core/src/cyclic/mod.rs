//! Cyclic cohomology of finite-dimensional algebras: the `(b, B)` operators,
//! Chern characters, group cocycles, the cyclic category and Hopf-cyclic data.

mod algebra;
mod check;
mod chern;
mod cochain;
mod group;
mod hopf;
mod lambda;
mod torus_cocycle;

pub use algebra::{FinAlgebra, MAX_DIM};
pub use cochain::{
    b0, connes_b, cyclic_shift, degeneracy, face, functional, hochschild_b, is_cyclic, is_cyclic_tol,
    signed_shift, symmetrizer, trace_cochain, Cochain, MAX_ENTRIES,
};
pub use lambda::{
    check_lambda_relations, defining_relations, enumerate_delta, enumerate_lambda, lambda_module_check,
    lambda_normal_form, AlgebraCochains, CyclicModule, LambdaGen, LambdaMorphism, LambdaReport, RelationCheck,
    TauVariant,
};
pub use chern::{chern_character, matrix_mul, pair, AlgMatrix, Chain};
pub use group::{group_algebra, group_cocycle_cochain, lattice_box, GroupCochain, GroupElement, Lattice, ZMod};
pub use hopf::{
    characteristic_map, check_invariant_trace, hopf_b, hopf_cyclic_ops, HopfAction, HopfCyclic, HopfCyclicOps,
    HopfData,
};
pub use torus_cocycle::{
    monomial_box, powers_rieffel_pairing, torus_cocycle, torus_cocycle_coboundary, torus_cocycle_value, PairingReport,
};
pub use check::{algebra_by_name, check_identities, CyclicReport, IdentityCheck, ALGEBRA_NAMES};
