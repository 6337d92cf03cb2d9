//! Error types shared across the crate.

use crate::carrier::CarrierElement;
use thiserror::Error;

/// Everything that can go wrong while building or evaluating a structure.
///
/// All arithmetic is exact, so none of these are numerical-tolerance issues;
/// each variant names a violated precondition or construction condition.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("convolution rule undefined on ({0}, {1})")]
    RuleDomain(CarrierElement, CarrierElement),

    #[error("measure weights sum to {0}, expected exactly 1")]
    MassNotOne(String),

    #[error("measure weight for {0} is not strictly positive: {1}")]
    NonPositiveWeight(CarrierElement, String),

    #[error("negative linearization coefficient g({n},{m};{k}) = {value}")]
    NegativeLinearization {
        n: usize,
        m: usize,
        k: usize,
        value: String,
    },

    #[error("polynomial normalization failed: P_{0}(1) = {1}, expected 1")]
    Normalization(usize, String),

    #[error("parameter out of range: {0}")]
    ParamRange(String),

    #[error("deformation weight condition violated at n = {n}: sum of earlier weights {sum} exceeds v_{n} = {vn}")]
    WeightConditionViolated { n: usize, sum: String, vn: String },

    #[error("operation is not commutative: {0} and {1} do not commute")]
    NotCommutative(CarrierElement, CarrierElement),

    #[error("algebra has no identity element (law fails at {0})")]
    NoIdentity(CarrierElement),

    #[error("deformation conditions not verified: {0}")]
    ConditionsNotVerified(String),

    #[error("group action invalid: {0}")]
    ActionInvalid(String),

    #[error("set is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("element {0} is not in the windowed center")]
    NotCentral(CarrierElement),

    #[error("descriptor has no involution")]
    NoInvolution,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("orbit sequence has no lift: {0}")]
    LiftMissing(String),

    #[error("element {0} is outside the carrier {1}")]
    OutsideCarrier(CarrierElement, String),

    #[error("sequence is not injective: {0} repeats")]
    NotInjective(CarrierElement),

    #[error("sequence contains the identity {0}")]
    ContainsIdentity(CarrierElement),

    #[error("coloring is undefined on {0}")]
    ColoringDomain(CarrierElement),

    #[error("invalid finite table: {0}")]
    InvalidTable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable variant name, used by reports to name the failing condition.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RuleDomain(..) => "RuleDomain",
            Error::MassNotOne(..) => "MassNotOne",
            Error::NonPositiveWeight(..) => "NonPositiveWeight",
            Error::NegativeLinearization { .. } => "NegativeLinearization",
            Error::Normalization(..) => "Normalization",
            Error::ParamRange(..) => "ParamRange",
            Error::WeightConditionViolated { .. } => "WeightConditionViolated",
            Error::NotCommutative(..) => "NotCommutative",
            Error::NoIdentity(..) => "NoIdentity",
            Error::ConditionsNotVerified(..) => "ConditionsNotVerified",
            Error::ActionInvalid(..) => "ActionInvalid",
            Error::NotSubgroup(..) => "NotSubgroup",
            Error::NotAutomorphism(..) => "NotAutomorphism",
            Error::NotCentral(..) => "NotCentral",
            Error::NoInvolution => "NoInvolution",
            Error::PreconditionViolated(..) => "PreconditionViolated",
            Error::LiftMissing(..) => "LiftMissing",
            Error::OutsideCarrier(..) => "OutsideCarrier",
            Error::NotInjective(..) => "NotInjective",
            Error::ContainsIdentity(..) => "ContainsIdentity",
            Error::ColoringDomain(..) => "ColoringDomain",
            Error::InvalidTable(..) => "InvalidTable",
            Error::InvalidInput(..) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
