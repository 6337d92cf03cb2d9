//! Exact witnesses and identities: the s_F recurrence, orbit mass bounds,
//! the quotient push-forward identity, windowed subalgebra closure, and the
//! S_k carrier.

use super::criteria::{ExperimentReport, FamilyRow, Verdict};
use super::families::{sfc, SequenceCandidate};
use crate::algebra::CarrierAlgebra;
use crate::axioms::Window;
use crate::carrier::CarrierElement;
use crate::constructions::{OrbitConstruction, OrbitVariant, QuotientConstruction};
use crate::error::{Error, Result};
use crate::hypergroup::HypergroupDescriptor;
use crate::rational::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// Builtin tag for descriptors whose carrier indexes a polynomial basis, so
/// that index addition is meaningful for their elements.
fn polynomial_builtin(k: &HypergroupDescriptor) -> Option<&str> {
    let builtin = k.spec()?.get("builtin")?.as_str()?;
    if matches!(builtin, "cp1" | "cp2" | "polynomial_hypergroup") {
        Some(builtin)
    } else {
        None
    }
}

/// Recurrence check for polynomial-basis descriptors: s_F = Σ_{j∈F} x_j lies
/// in spt(δ_F) for every F of size ≤ depth.  Each report row carries the
/// single mass δ_F({s_F}), which must be positive.
pub fn recurrent_witness(
    k: &HypergroupDescriptor,
    xs: &SequenceCandidate,
    depth: usize,
) -> Result<ExperimentReport> {
    if polynomial_builtin(k).is_none() {
        return Err(Error::PreconditionViolated(format!(
            "recurrent_witness needs a polynomial-basis descriptor, got {}",
            k.name()
        )));
    }
    let terms: Vec<u64> = xs
        .terms()
        .iter()
        .map(|t| {
            t.as_nat()
                .ok_or_else(|| Error::InvalidInput(format!("term {t} is not a Z+ index")))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut refuting: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for entry in sfc(k, xs, depth)? {
        let s_f: u64 = entry.indices.iter().map(|&j| terms[j - 1]).sum();
        let mass = entry.measure.weight(&CarrierElement::Nat(s_f));
        if mass.is_zero() && !refuting.contains_key(&1) {
            refuting.insert(1, entry.indices.clone());
        }
        rows.push(FamilyRow {
            support: entry.measure.support().cloned().collect(),
            indices: entry.indices,
            masses: vec![mass],
            discarded: false,
        });
    }
    let cases = rows.len();
    Ok(ExperimentReport {
        structure: k.name().into(),
        coloring: "indicator of s_F per family".into(),
        criterion: "recurrent: s_F in spt(delta_F)".into(),
        depth,
        window: format!("sequence of {} terms", xs.len()),
        verdict: if refuting.is_empty() {
            Verdict::Witness
        } else {
            Verdict::Refuted
        },
        witness_class: None,
        sequence: xs.terms().to_vec(),
        rows,
        refuting,
        cases,
    })
}

/// δ_{F′}({τ_F}) against the variant's lower bound.
#[derive(Debug, Clone)]
pub struct OrbitBoundReport {
    /// τ_F: the orbit of the increasing-order product of the lifted terms.
    pub tau: CarrierElement,
    pub mass_at_tau: Rat,
    /// 1/cᵐ for the group-affine variant, 1/cᵐ⁻¹ otherwise.
    pub bound: Rat,
    pub c: usize,
    pub m: usize,
    pub holds: bool,
}

impl OrbitBoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.to_json(),
            "mass_at_tau": crate::rational::rat_to_string(&self.mass_at_tau),
            "bound": crate::rational::rat_to_string(&self.bound),
            "c": self.c,
            "m": self.m,
            "holds": self.holds,
        })
    }
}

/// Computes δ_{F′}({τ_F}) for the orbit sequence induced by `lift` and the
/// index set `f` (1-based, increasing), and compares it with the variant's
/// bound.  The caller supplies the lift; its terms must have pairwise
/// distinct orbits so the orbit sequence is injective.
pub fn orbit_mass_bound(
    oc: &OrbitConstruction,
    lift: &[CarrierElement],
    f: &[usize],
) -> Result<OrbitBoundReport> {
    if lift.is_empty() {
        return Err(Error::LiftMissing("empty lift".into()));
    }
    let mut labels = Vec::with_capacity(lift.len());
    let mut seen = BTreeSet::new();
    for x in lift {
        let label = oc
            .orbit_of(x)
            .map_err(|e| Error::LiftMissing(format!("lift term {x}: {e}")))?;
        if !seen.insert(label.clone()) {
            return Err(Error::LiftMissing(format!(
                "lift terms collide on the orbit {label}"
            )));
        }
        labels.push(label);
    }
    if f.is_empty()
        || f[0] < 1
        || f[f.len() - 1] > lift.len()
        || f.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidInput(
            "F must be a non-empty increasing 1-based index set into the lift".into(),
        ));
    }
    // τ_F: product of the lifted terms upstairs, then its orbit.
    let mut product = lift[f[0] - 1].clone();
    for &j in &f[1..] {
        product = oc.base().op(&product, &lift[j - 1])?;
    }
    let tau = oc.orbit_of(&product)?;
    let seq: Vec<CarrierElement> = f.iter().map(|&j| labels[j - 1].clone()).collect();
    let mass = oc.descriptor().convolve_sequence(&seq)?.weight(&tau);
    let m = f.len();
    let c = oc.c();
    let exponent = match oc.variant() {
        OrbitVariant::GroupAffine => m,
        OrbitVariant::Automorphism | OrbitVariant::SemigroupAutomorphism => m - 1,
    };
    let bound = Rat::new(BigInt::one(), BigInt::from(c).pow(exponent as u32));
    let holds = mass >= bound;
    Ok(OrbitBoundReport {
        tau,
        mass_at_tau: mass,
        bound,
        c,
        m,
        holds,
    })
}

/// Both sides of the push-forward identity
/// (δ_{[x₁]}*⋯*δ_{[x_m]})(E) = (δ_{x₁}*⋯*δ_{x_m})(π⁻¹E), evaluated exactly.
#[derive(Debug, Clone)]
pub struct PushforwardReport {
    pub lhs: Rat,
    pub rhs: Rat,
    pub equal: bool,
}

pub fn quotient_pushforward_identity(
    qc: &QuotientConstruction,
    xs: &[CarrierElement],
    e: &BTreeSet<CarrierElement>,
) -> Result<PushforwardReport> {
    if xs.is_empty() {
        return Err(Error::InvalidInput(
            "push-forward identity needs at least one factor".into(),
        ));
    }
    let labels: Vec<CarrierElement> = xs.iter().map(|x| qc.project(x)).collect::<Result<_>>()?;
    let lhs = qc.descriptor().convolve_sequence(&labels)?.mass(e);
    let preimage = qc.preimage(e)?;
    let rhs = qc.base().convolve_sequence(xs)?.mass(&preimage);
    Ok(PushforwardReport {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Outcome of closing a generating set under convolution supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOutcome {
    Closed {
        set: BTreeSet<CarrierElement>,
        /// For polynomial-basis descriptors: whether the closed set is also
        /// closed under index addition inside the window.
        additive_closed: Option<bool>,
    },
    /// First support point found outside the window; a windowed run cannot
    /// certify closure past its edge, so there is no verdict on the set.
    EscapesWindow(CarrierElement),
}

/// Closes `gens` under supports of pairwise convolutions within the window.
pub fn subalgebra_closure(
    k: &HypergroupDescriptor,
    gens: &BTreeSet<CarrierElement>,
    window: &Window,
) -> Result<ClosureOutcome> {
    for g in gens {
        if !window.contains(g) {
            return Err(Error::InvalidInput(format!(
                "generator {g} is outside the window"
            )));
        }
    }
    let mut set = gens.clone();
    // Fixpoint rounds; the memo cache makes revisited pairs cheap.
    loop {
        let mut grew = false;
        let elems: Vec<CarrierElement> = set.iter().cloned().collect();
        for x in &elems {
            for y in &elems {
                for z in k.convolve(x, y)?.support() {
                    if !window.contains(z) {
                        return Ok(ClosureOutcome::EscapesWindow(z.clone()));
                    }
                    if set.insert(z.clone()) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let additive_closed = polynomial_builtin(k).map(|_| {
        let nats: Vec<u64> = set.iter().filter_map(|x| x.as_nat()).collect();
        nats.iter().all(|a| {
            nats.iter().all(|b| {
                let s = CarrierElement::Nat(a + b);
                !window.contains(&s) || set.contains(&s)
            })
        })
    });
    Ok(ClosureOutcome::Closed {
        set,
        additive_closed,
    })
}

/// The carrier S_k = {0,…,k−1} ∪ (kℕ+1) with addition modulo k.  Every
/// product lands in the block {0,…,k−1}; the tail kℕ+1 consists of
/// non-products, and there is no two-sided identity on the whole carrier.
pub fn sk_semigroup(k: u64) -> Result<CarrierAlgebra> {
    CarrierAlgebra::sk(k)
}
