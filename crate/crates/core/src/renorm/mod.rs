//! Renormalization through the Hopf algebra of rooted trees: admissible-cut
//! coproduct, Bogoliubov recursion, Birkhoff decomposition of Laurent-valued
//! characters, residue, β-function and the scattering formula.

pub mod birkhoff;
pub mod character;
pub mod hopf;
pub mod laurent;
pub mod scattering;
pub mod tree;

pub use birkhoff::{birkhoff, birkhoff_with, bogoliubov, residue_and_beta, Birkhoff, BirkhoffCache, Bogoliubov, Residue};
pub use character::{b_plus_rule, convolve_at, ladder_rule, power_rule, theta_action, theta_action_to, HopfCharacter};
pub use hopf::{
    admissible_cuts, antipode, antipode_forest, antipode_left_defect, antipode_right_defect, coassociativity_sides,
    coproduct, coproduct_forest, cut, is_coassociative_on, proper_cuts, AntipodeCache, CutTerm, HopfElement,
};
pub use laurent::{Coefficient, LaurentSeries, DEFAULT_ORDER, EXACT};
pub use scattering::{
    one_parameter, scattering_check, scattering_product, scattering_sequence, ScatteringProduct, ScatteringReport,
    MAX_SCATTERING_NODES,
};
pub use tree::{Forest, Tree};
