//! Builders for every hypergroup family the crate knows, with exact
//! condition validation before construction.

mod chebyshev;
mod deformation;
mod dunkl;
mod orbit;
mod poly;
mod quotient;

pub use chebyshev::{cp1, cp1_rule, cp2, cp2_rule};
pub use deformation::{
    check_idempotent_deformation, deform, max_deformation, DeformationWeights,
};
pub use dunkl::dunkl_ramirez;
pub use orbit::{
    automorphism_orbit_hypergroup, coset_semiconvo, double_coset_hypergroup, klein_action_on_pairs,
    negate_first_action_on_mixed, orbit_semiconvo, semigroup_orbit_semiconvo, sign_action_on_int,
    swap_action_on_int_pairs, swap_action_on_nat_pairs, AffineAction, OrbitConstruction,
    OrbitVariant,
};
pub use poly::polynomial_hypergroup;
pub use quotient::{q1_degenerate_base, ross_quotient, QuotientConstruction};
