//! Quotients of a commutative hypergroup by a finite subgroup of its center.
//!
//! For H ≤ Z(K), the coset of x is xH = {xz : z ∈ H} (each xz a single point
//! because z is central) and the convolution on K//H is the push-forward of
//! the convolution on K along π: x ↦ xH:
//!
//!   (δ_{[x]} * δ_{[y]})(E) = (δ_x * δ_y)(π⁻¹(E)).
//!
//! Centrality of H is only checkable on a window of K; every convolution
//! re-verifies that the measures it pushes forward do not depend on the
//! chosen coset representatives, so a violation surfaces as an error rather
//! than a silently wrong table.

use crate::axioms::Window;
use crate::carrier::{CarrierElement, CarrierKind};
use crate::constructions::{max_deformation, DeformationWeights};
use crate::error::{Error, Result};
use crate::hypergroup::{Claim, FnRule, HypergroupDescriptor, Involution};
use crate::measure::FiniteMeasure;
use itertools::Itertools;
use serde_json::json;
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Debug)]
pub struct QuotientConstruction {
    descriptor: Arc<HypergroupDescriptor>,
    base: Arc<HypergroupDescriptor>,
    h: Vec<CarrierElement>,
}

impl QuotientConstruction {
    pub fn descriptor(&self) -> &HypergroupDescriptor {
        &self.descriptor
    }

    pub fn descriptor_arc(&self) -> Arc<HypergroupDescriptor> {
        Arc::clone(&self.descriptor)
    }

    pub fn base(&self) -> &HypergroupDescriptor {
        &self.base
    }

    pub fn subgroup(&self) -> &[CarrierElement] {
        &self.h
    }

    /// π(x) = xH.
    pub fn project(&self, x: &CarrierElement) -> Result<CarrierElement> {
        project(&self.base, &self.h, x)
    }

    /// π⁻¹(E) for a set of coset labels: the union of their members.
    pub fn preimage(&self, labels: &BTreeSet<CarrierElement>) -> Result<BTreeSet<CarrierElement>> {
        let mut out = BTreeSet::new();
        for label in labels {
            let members = label.members().ok_or_else(|| {
                Error::OutsideCarrier(label.clone(), self.descriptor.carrier().name())
            })?;
            out.extend(members.iter().cloned());
        }
        Ok(out)
    }
}

/// xz for central z: the unique point of spt(δ_x * δ_z).
fn central_product(
    base: &HypergroupDescriptor,
    x: &CarrierElement,
    z: &CarrierElement,
) -> Result<CarrierElement> {
    let mu = base.convolve(x, z)?;
    mu.as_point_mass()
        .cloned()
        .ok_or_else(|| Error::NotCentral(z.clone()))
}

fn project(
    base: &HypergroupDescriptor,
    h: &[CarrierElement],
    x: &CarrierElement,
) -> Result<CarrierElement> {
    let mut members = BTreeSet::new();
    for z in h {
        members.insert(central_product(base, x, z)?);
    }
    Ok(CarrierElement::coset(members))
}

/// K//H for a finite subgroup H of the center of a commutative hypergroup K.
/// Centrality, closure under products and involution, and membership of the
/// identity are verified against `window`; representative-independence of the
/// push-forward is re-verified inside every convolution.
pub fn ross_quotient(
    base: Arc<HypergroupDescriptor>,
    h: &[CarrierElement],
    window: &Window,
) -> Result<QuotientConstruction> {
    if !base.claims().contains(&Claim::Commutative) {
        return Err(Error::PreconditionViolated(format!(
            "quotient base {} is not claimed commutative",
            base.name()
        )));
    }
    let h: Vec<CarrierElement> = h.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if h.is_empty() {
        return Err(Error::NotSubgroup("subgroup list is empty".into()));
    }
    if !h.contains(base.identity()) {
        return Err(Error::NotSubgroup(format!(
            "identity {} missing",
            base.identity()
        )));
    }

    // Window-central: each z ∈ H convolves every window element to a point.
    for z in &h {
        for y in window.elements() {
            if base.convolve(z, y)?.support_len() != 1 {
                return Err(Error::NotCentral(z.clone()));
            }
        }
    }
    // Subgroup closure inside the center.
    for z1 in &h {
        for z2 in &h {
            let prod = central_product(&base, z1, z2)?;
            if !h.contains(&prod) {
                return Err(Error::NotSubgroup(format!("{z1}·{z2} = {prod} escapes")));
            }
        }
        let zc = base.involute(z1)?;
        if !h.contains(&zc) {
            return Err(Error::NotSubgroup(format!("involute({z1}) = {zc} escapes")));
        }
    }

    let carrier = CarrierKind::Cosets(Box::new(base.carrier().clone()));
    let carrier_name = carrier.name();
    let identity = project(&base, &h, base.identity())?;
    let name = format!("{}//{{{}}}", base.name(), h.iter().join(","));
    let spec = json!({
        "builtin": "ross_quotient",
        "params": {
            "base": base.name(),
            "subgroup": h.iter().map(|z| z.to_json()).collect::<Vec<_>>(),
        },
    });

    let rule_base = Arc::clone(&base);
    let rule_h = h.clone();
    let rule_carrier = carrier_name.clone();
    let rule = move |lx: &CarrierElement, ly: &CarrierElement| -> Result<FiniteMeasure> {
        let bad = |l: &CarrierElement| Error::OutsideCarrier(l.clone(), rule_carrier.clone());
        let xs = lx.members().ok_or_else(|| bad(lx))?;
        let ys = ly.members().ok_or_else(|| bad(ly))?;
        if xs.is_empty() || project(&rule_base, &rule_h, &xs[0])? != *lx {
            return Err(bad(lx));
        }
        if ys.is_empty() || project(&rule_base, &rule_h, &ys[0])? != *ly {
            return Err(bad(ly));
        }
        // Push forward from every representative pair; they must agree.
        let mut pushed: Option<FiniteMeasure> = None;
        for u in xs {
            for v in ys {
                let mu = rule_base
                    .convolve(u, v)?
                    .try_map_elements(|p| project(&rule_base, &rule_h, p))?;
                match &pushed {
                    None => pushed = Some(mu),
                    Some(first) if *first == mu => {}
                    Some(first) => {
                        return Err(Error::PreconditionViolated(format!(
                            "push-forward depends on representatives: δ_{lx}*δ_{ly} gave {first} from one pair and {mu} from ({u}, {v})"
                        )))
                    }
                }
            }
        }
        Ok(pushed.expect("member lists are non-empty"))
    };

    let mut descriptor = HypergroupDescriptor::new(
        name,
        carrier,
        identity,
        Arc::new(FnRule(rule)),
    )
    .with_claim(Claim::Hypergroup)
    .with_claim(Claim::Commutative)
    .with_spec(spec);
    if base.claims().contains(&Claim::Hermitian) {
        // [x]̌ = [x̌] = [x] when the base involution is trivial.
        descriptor = descriptor.hermitian();
    } else {
        let inv_base = Arc::clone(&base);
        let inv_h = h.clone();
        let inv_carrier = carrier_name;
        descriptor = descriptor.with_involution(Involution::Map {
            label: "quotient-involution".into(),
            map: Arc::new(move |label: &CarrierElement| {
                let members = label.members().ok_or_else(|| {
                    Error::OutsideCarrier(label.clone(), inv_carrier.clone())
                })?;
                let rep = members
                    .first()
                    .ok_or_else(|| Error::OutsideCarrier(label.clone(), inv_carrier.clone()))?;
                project(&inv_base, &inv_h, &inv_base.involute(rep)?)
            }),
        });
    }

    Ok(QuotientConstruction {
        descriptor: Arc::new(descriptor),
        base,
        h,
    })
}

/// The deformation of (ℤ₊, max) along v = (1, 1, 4, 8, 16, …): v_1 = 1
/// forces q_1 = δ_0, so 1 convolves every element to a point and the center
/// is {0, 1} — the smallest base with a non-trivial central quotient.
pub fn q1_degenerate_base(n_max: usize) -> Result<HypergroupDescriptor> {
    max_deformation(DeformationWeights::q1_degenerate(), n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{center, check_all};
    use crate::rational::rat;

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    fn label(ns: &[u64]) -> CarrierElement {
        CarrierElement::coset(ns.iter().map(|n| nat(*n)))
    }

    fn build(n_max: usize) -> QuotientConstruction {
        let base = Arc::new(q1_degenerate_base(n_max).unwrap());
        let window = Window::nat_range(n_max as u64);
        ross_quotient(base, &[nat(0), nat(1)], &window).unwrap()
    }

    #[test]
    fn base_center_is_zero_one() {
        let base = q1_degenerate_base(10).unwrap();
        let window = Window::nat_range(10);
        assert_eq!(center(&base, &window).unwrap(), vec![nat(0), nat(1)]);
    }

    #[test]
    fn cosets_collapse_zero_and_one() {
        let q = build(10);
        assert_eq!(q.project(&nat(0)).unwrap(), label(&[0, 1]));
        assert_eq!(q.project(&nat(1)).unwrap(), label(&[0, 1]));
        assert_eq!(q.project(&nat(5)).unwrap(), label(&[5]));
        assert_eq!(q.descriptor().identity(), &label(&[0, 1]));
    }

    #[test]
    fn quotient_diagonal_pushes_q_m_forward() {
        let q = build(10);
        // q_3 = (1/8)δ_0 + (1/8)δ_1 + (1/2)δ_2 + (1/4)δ_3 under v = (1,1,4,8):
        // the {0,1} mass merges in the quotient.
        let got = q
            .descriptor()
            .convolve(&label(&[3]), &label(&[3]))
            .unwrap();
        let want = FiniteMeasure::from_weights([
            (label(&[0, 1]), rat(1, 4)),
            (label(&[2]), rat(1, 2)),
            (label(&[3]), rat(1, 4)),
        ])
        .unwrap();
        assert_eq!(got, want);
        // Off-diagonal stays a point mass at the max.
        let got = q
            .descriptor()
            .convolve(&label(&[2]), &label(&[7]))
            .unwrap();
        assert_eq!(got, FiniteMeasure::point_mass(label(&[7])));
    }

    #[test]
    fn quotient_axioms_hold_on_window() {
        let q = build(9);
        let labels: Vec<CarrierElement> = std::iter::once(label(&[0, 1]))
            .chain((2..=9).map(|m| label(&[m])))
            .collect();
        let window = Window::new(labels).unwrap();
        let report = check_all(q.descriptor(), &window).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn trivial_subgroup_reproduces_base() {
        let base = Arc::new(q1_degenerate_base(8).unwrap());
        let window = Window::nat_range(8);
        let q = ross_quotient(Arc::clone(&base), &[nat(0)], &window).unwrap();
        for m in 0..=8u64 {
            for n in 0..=8u64 {
                let got = q
                    .descriptor()
                    .convolve(&label(&[m]), &label(&[n]))
                    .unwrap();
                let want = base
                    .convolve(&nat(m), &nat(n))
                    .unwrap()
                    .map_elements(|p| CarrierElement::coset([p.clone()]));
                assert_eq!(got, want, "({m},{n})");
            }
        }
    }

    #[test]
    fn non_central_subgroup_is_rejected() {
        // In the 2^n deformation q_1 = ½δ_0 + ½δ_1, so 1 is not central.
        let base = Arc::new(
            max_deformation(DeformationWeights::powers_of_two(), 8).unwrap(),
        );
        let window = Window::nat_range(8);
        let err = ross_quotient(base, &[nat(0), nat(1)], &window).unwrap_err();
        assert!(matches!(err, Error::NotCentral(z) if z == nat(1)));
    }

    #[test]
    fn subgroup_must_contain_identity() {
        let base = Arc::new(q1_degenerate_base(8).unwrap());
        let window = Window::nat_range(8);
        assert!(matches!(
            ross_quotient(base, &[nat(1)], &window),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn mass_is_preserved_under_projection() {
        let q = build(10);
        let mu = q
            .base()
            .convolve_sequence(&[nat(4), nat(4), nat(3)])
            .unwrap();
        let pushed = q
            .descriptor()
            .convolve_sequence(&[label(&[4]), label(&[4]), label(&[3])])
            .unwrap();
        // Lemma-style identity: mass of E upstairs equals mass of π(E).
        let e: BTreeSet<CarrierElement> = [label(&[0, 1]), label(&[4])].into_iter().collect();
        let pre = q.preimage(&e).unwrap();
        assert_eq!(pushed.mass(&e), mu.mass(&pre));
    }
}
