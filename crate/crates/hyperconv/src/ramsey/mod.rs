//! Bounded Ramsey-property experiments: colorings, FS/FP and FC/SFC families,
//! criterion checks, prefix-pruned sequence searches, and exact reproducers
//! for the pairwise obstruction, α-mass, recurrence, orbit-bound, and
//! push-forward computations.
//!
//! The Ramsey definitions quantify over infinite sequences.  Everything here
//! is explicitly (window, depth)-bounded and the reports say so: "exhausted"
//! means no witness at this bound, never a theorem.

mod coloring;
mod cp2;
mod criteria;
mod families;
mod search;
mod witness;

pub use coloring::Coloring;
pub use cp2::{cp2_alpha_instances, verify_cp2_alpha, verify_cp2_mod3, Cp2AlphaReport};
pub use criteria::{check_criterion, Criterion, ExperimentReport, FamilyRow, Verdict};
pub use families::{fs_fp_set, sfc, FamilyEntry, SequenceCandidate};
pub use search::search_sequence;
pub use witness::{
    orbit_mass_bound, quotient_pushforward_identity, recurrent_witness, sk_semigroup,
    subalgebra_closure, ClosureOutcome, OrbitBoundReport, PushforwardReport,
};
