//! Exact-arithmetic engine for discrete semiconvos and hypergroups.
//!
//! The crate is organized around four layers:
//!
//! * [`measure`] / [`rational`] — finitely supported probability measures
//!   with exact rational weights;
//! * [`hypergroup`] / [`axioms`] — convolution descriptors plus windowed
//!   axiom checking (associativity, identity, involution laws, centers);
//! * [`constructions`] — the concrete families: Chebyshev convolutions,
//!   general polynomial linearizations, Dunkl–Ramirez, deformations of
//!   idempotent semigroups, orbit/coset/double-coset spaces, and central
//!   quotients;
//! * [`ramsey`] — colorings, finite-subset convolutions δ_F, partition
//!   criteria, sequence search, and the verified inequality witnesses.
//!
//! Everything is exact: weights are arbitrary-precision rationals, equality
//! of measures is literal equality, and every reported counterexample or
//! witness can be replayed.

pub mod algebra;
pub mod axioms;
pub mod carrier;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod hypergroup;
pub mod measure;
pub mod polynomial;
pub mod ramsey;
pub mod rational;
pub mod report;
pub mod specs;

pub use algebra::CarrierAlgebra;
pub use carrier::{CarrierElement, CarrierKind};
pub use error::{Error, Result};
pub use hypergroup::{Claim, HypergroupDescriptor, Involution};
pub use measure::{convolve_measures, FiniteMeasure};
pub use rational::Rat;
