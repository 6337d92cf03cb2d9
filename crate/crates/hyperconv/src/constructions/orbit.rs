//! Orbit, coset, and double-coset constructions.
//!
//! A finite group acting on a group (or semigroup) collapses it to a space of
//! orbits carrying a convolution:
//!
//! * `orbit_semiconvo` — any action on a group, δ_{x^H}*δ_{y^H} =
//!   (1/c²) Σ_{s,t} δ_{(x^s y^t)^H};
//! * `automorphism_orbit_hypergroup` — H ≤ Aut(G), (1/c) Σ_s δ_{(x^s y)^H},
//!   involution (x⁻¹)^H;
//! * `semigroup_orbit_semiconvo` — the same averaging over a semigroup with
//!   identity, no involution;
//! * `coset_semiconvo` / `double_coset_hypergroup` — H ≤ G finite,
//!   (1/c) Σ_s δ_{xsyH} resp. (1/c) Σ_t δ_{HxtyH}.
//!
//! Action laws (identity, compatibility, and where required the automorphism
//! property) are verified lazily on exactly the points each convolution
//! touches, so infinite carriers stay usable.

use crate::algebra::CarrierAlgebra;
use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use crate::hypergroup::{Claim, FnRule, HypergroupDescriptor, Involution};
use crate::measure::FiniteMeasure;
use crate::rational::Rat;
use itertools::Itertools;
use num_bigint::BigInt;
use serde_json::json;
use std::sync::Arc;

type ActFn = Arc<dyn Fn(&CarrierElement, &CarrierElement) -> Result<CarrierElement> + Send + Sync>;

/// A finite group H acting on a carrier from the left: act(e, x) = x and
/// act(s, act(t, x)) = act(st, x).
#[derive(Clone)]
pub struct AffineAction {
    name: String,
    group: CarrierAlgebra,
    elements: Vec<CarrierElement>,
    act: ActFn,
}

impl std::fmt::Debug for AffineAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AffineAction({} by {})", self.name, self.group.name())
    }
}

impl AffineAction {
    pub fn new(
        name: impl Into<String>,
        group: CarrierAlgebra,
        act: impl Fn(&CarrierElement, &CarrierElement) -> Result<CarrierElement>
            + Send
            + Sync
            + 'static,
    ) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| Error::ActionInvalid("acting group must be finite".into()))?;
        let e = group
            .identity()
            .ok_or_else(|| Error::ActionInvalid("acting group has no identity".into()))?;
        for g in &elements {
            if group.inverse(g).is_none() {
                return Err(Error::ActionInvalid(format!("{g} has no inverse")));
            }
        }
        let _ = e;
        Ok(AffineAction {
            name: name.into(),
            group,
            elements,
            act: Arc::new(act),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &CarrierAlgebra {
        &self.group
    }

    /// #H, the averaging constant c.
    pub fn c(&self) -> usize {
        self.elements.len()
    }

    pub fn group_elements(&self) -> &[CarrierElement] {
        &self.elements
    }

    pub fn apply(&self, s: &CarrierElement, x: &CarrierElement) -> Result<CarrierElement> {
        (self.act)(s, x)
    }

    /// The orbit x^H as a sorted, deduplicated member list.
    pub fn orbit_members(&self, x: &CarrierElement) -> Result<Vec<CarrierElement>> {
        let mut members = std::collections::BTreeSet::new();
        for s in &self.elements {
            members.insert(self.apply(s, x)?);
        }
        Ok(members.into_iter().collect())
    }

    /// The orbit x^H as a carrier element.
    pub fn orbit_label(&self, x: &CarrierElement) -> Result<CarrierElement> {
        Ok(CarrierElement::orbit(self.orbit_members(x)?))
    }

    /// Checks the action laws at the single point x.
    pub fn verify_action_at(&self, x: &CarrierElement) -> Result<()> {
        let e = self.group.identity().expect("checked in new");
        let ex = self.apply(&e, x)?;
        if ex != *x {
            return Err(Error::ActionInvalid(format!(
                "act(e, {x}) = {ex}, expected {x}"
            )));
        }
        for s in &self.elements {
            for t in &self.elements {
                let via_points = self.apply(s, &self.apply(t, x)?)?;
                let st = self.group.op(s, t)?;
                let via_group = self.apply(&st, x)?;
                if via_points != via_group {
                    return Err(Error::ActionInvalid(format!(
                        "act({s}, act({t}, {x})) = {via_points} but act({s}{t}, {x}) = {via_group}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks act(s, x·y) = act(s, x)·act(s, y) for every s ∈ H at the single
    /// pair (x, y).
    pub fn verify_automorphism_at(
        &self,
        base: &CarrierAlgebra,
        x: &CarrierElement,
        y: &CarrierElement,
    ) -> Result<()> {
        let xy = base.op(x, y)?;
        for s in &self.elements {
            let lhs = self.apply(s, &xy)?;
            let rhs = base.op(&self.apply(s, x)?, &self.apply(s, y)?)?;
            if lhs != rhs {
                return Err(Error::NotAutomorphism(format!(
                    "act({s}, {x}·{y}) = {lhs} but act({s},{x})·act({s},{y}) = {rhs}"
                )));
            }
        }
        Ok(())
    }
}

fn order_two_group(name: &str, nontrivial: &str) -> CarrierAlgebra {
    CarrierAlgebra::finite_table(name, &["id", nontrivial], vec![vec![0, 1], vec![1, 0]])
        .expect("static table")
}

/// {±1} acting on ℤ by multiplication.
pub fn sign_action_on_int() -> AffineAction {
    AffineAction::new("sign", order_two_group("C2", "neg"), |s, x| {
        let v = x
            .as_int()
            .ok_or_else(|| Error::OutsideCarrier(x.clone(), "Z".into()))?;
        Ok(match s {
            CarrierElement::Sym(0, _) => x.clone(),
            _ => CarrierElement::Int(-v),
        })
    })
    .expect("static action")
}

/// Coordinate swap on ℤ₊×ℤ₊.
pub fn swap_action_on_nat_pairs() -> AffineAction {
    AffineAction::new("swap", order_two_group("C2", "swap"), |s, x| match (s, x) {
        (CarrierElement::Sym(0, _), _) => Ok(x.clone()),
        (_, CarrierElement::NatPair(a, b)) => Ok(CarrierElement::NatPair(*b, *a)),
        _ => Err(Error::OutsideCarrier(x.clone(), "Z+xZ+".into())),
    })
    .expect("static action")
}

/// Coordinate swap on ℤ×ℤ.
pub fn swap_action_on_int_pairs() -> AffineAction {
    AffineAction::new("swap", order_two_group("C2", "swap"), |s, x| match (s, x) {
        (CarrierElement::Sym(0, _), _) => Ok(x.clone()),
        (_, CarrierElement::IntPair(a, b)) => Ok(CarrierElement::IntPair(*b, *a)),
        _ => Err(Error::OutsideCarrier(x.clone(), "ZxZ".into())),
    })
    .expect("static action")
}

/// The Klein four-group {id, α, β, γ} on ℤ×ℤ with α(x,y) = (−x,y),
/// β(x,y) = (x,−y), γ(x,y) = (−x,−y).
pub fn klein_action_on_pairs() -> AffineAction {
    let klein = CarrierAlgebra::finite_table(
        "klein",
        &["id", "alpha", "beta", "gamma"],
        vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ],
    )
    .expect("static table");
    AffineAction::new("klein", klein, |s, x| {
        let (a, b) = match x {
            CarrierElement::IntPair(a, b) => (*a, *b),
            _ => return Err(Error::OutsideCarrier(x.clone(), "ZxZ".into())),
        };
        Ok(match s {
            CarrierElement::Sym(1, _) => CarrierElement::IntPair(-a, b),
            CarrierElement::Sym(2, _) => CarrierElement::IntPair(a, -b),
            CarrierElement::Sym(3, _) => CarrierElement::IntPair(-a, -b),
            _ => x.clone(),
        })
    })
    .expect("static action")
}

/// (x,y) ↦ (−x,y) on the semigroup (ℤ×ℕ) ∪ {(0,0)}.
pub fn negate_first_action_on_mixed() -> AffineAction {
    AffineAction::new("negate-first", order_two_group("H2", "neg1"), |s, x| {
        match (s, x) {
            (CarrierElement::Sym(0, _), _) => Ok(x.clone()),
            (_, CarrierElement::IntPair(a, b)) => Ok(CarrierElement::IntPair(-a, *b)),
            _ => Err(Error::OutsideCarrier(x.clone(), "ZxN+identity".into())),
        }
    })
    .expect("static action")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitVariant {
    /// δ_{x^H}*δ_{y^H} = (1/c²) Σ_{s,t} δ_{(x^s y^t)^H}.
    GroupAffine,
    /// δ_{x^H}*δ_{y^H} = (1/c) Σ_s δ_{(x^s y)^H} with involution (x⁻¹)^H.
    Automorphism,
    /// The automorphism averaging over a semigroup; no involution.
    SemigroupAutomorphism,
}

/// An orbit-space descriptor together with the data that produced it, kept
/// for lifting orbit labels back to base elements.
pub struct OrbitConstruction {
    descriptor: Arc<HypergroupDescriptor>,
    base: CarrierAlgebra,
    action: AffineAction,
    variant: OrbitVariant,
}

impl OrbitConstruction {
    pub fn descriptor(&self) -> &HypergroupDescriptor {
        &self.descriptor
    }

    pub fn descriptor_arc(&self) -> Arc<HypergroupDescriptor> {
        Arc::clone(&self.descriptor)
    }

    pub fn base(&self) -> &CarrierAlgebra {
        &self.base
    }

    pub fn action(&self) -> &AffineAction {
        &self.action
    }

    pub fn variant(&self) -> OrbitVariant {
        self.variant
    }

    pub fn c(&self) -> usize {
        self.action.c()
    }

    pub fn orbit_of(&self, x: &CarrierElement) -> Result<CarrierElement> {
        self.action.orbit_label(x)
    }

    /// The canonical (minimal) base representative of an orbit label.
    pub fn lift(&self, label: &CarrierElement) -> Option<CarrierElement> {
        label.members().and_then(|m| m.first().cloned())
    }
}

/// Lifts an orbit label to its minimal member, rejecting labels that are not
/// genuine orbits of this action.
fn lift_orbit(
    action: &AffineAction,
    carrier_name: &str,
    label: &CarrierElement,
) -> Result<CarrierElement> {
    let members = label
        .members()
        .filter(|m| matches!(label, CarrierElement::Orbit(_)) && !m.is_empty())
        .ok_or_else(|| Error::OutsideCarrier(label.clone(), carrier_name.to_string()))?;
    let x = members[0].clone();
    action.verify_action_at(&x)?;
    if action.orbit_label(&x)? != *label {
        return Err(Error::OutsideCarrier(label.clone(), carrier_name.to_string()));
    }
    Ok(x)
}

fn orbit_variant_construction(
    base: &CarrierAlgebra,
    action: AffineAction,
    variant: OrbitVariant,
) -> Result<OrbitConstruction> {
    let e = base
        .identity()
        .ok_or_else(|| Error::NoIdentity(CarrierElement::Nat(0)))?;
    action.verify_action_at(&e)?;
    let identity_label = action.orbit_label(&e)?;
    let carrier = CarrierKind::Orbits(Box::new(base.carrier_kind()));
    let carrier_name = carrier.name();
    let c = action.c();

    let (builtin, claim) = match variant {
        OrbitVariant::GroupAffine => ("orbit_semiconvo", Claim::SemiconvoOnly),
        OrbitVariant::Automorphism => ("automorphism_orbit_hypergroup", Claim::Hypergroup),
        OrbitVariant::SemigroupAutomorphism => ("semigroup_orbit_semiconvo", Claim::SemiconvoOnly),
    };
    let name = format!("{builtin}({}; {})", base.name(), action.name());
    let spec = json!({
        "builtin": builtin,
        "params": {"base": base.name(), "action": action.name()},
    });

    let rule_base = base.clone();
    let rule_action = action.clone();
    let rule_carrier = carrier_name.clone();
    let rule = move |lx: &CarrierElement, ly: &CarrierElement| -> Result<FiniteMeasure> {
        let x = lift_orbit(&rule_action, &rule_carrier, lx)?;
        let y = lift_orbit(&rule_action, &rule_carrier, ly)?;
        let mut weights = Vec::new();
        match variant {
            OrbitVariant::GroupAffine => {
                let w = Rat::new(BigInt::from(1), BigInt::from((c * c) as u64));
                for s in rule_action.group_elements() {
                    let xs = rule_action.apply(s, &x)?;
                    for t in rule_action.group_elements() {
                        let yt = rule_action.apply(t, &y)?;
                        let prod = rule_base.op(&xs, &yt)?;
                        weights.push((rule_action.orbit_label(&prod)?, w.clone()));
                    }
                }
            }
            OrbitVariant::Automorphism | OrbitVariant::SemigroupAutomorphism => {
                rule_action.verify_automorphism_at(&rule_base, &x, &y)?;
                let w = Rat::new(BigInt::from(1), BigInt::from(c as u64));
                for s in rule_action.group_elements() {
                    let prod = rule_base.op(&rule_action.apply(s, &x)?, &y)?;
                    weights.push((rule_action.orbit_label(&prod)?, w.clone()));
                }
            }
        }
        FiniteMeasure::from_weights(weights)
    };

    let mut descriptor = HypergroupDescriptor::new(
        name,
        carrier,
        identity_label,
        Arc::new(FnRule(rule)),
    )
    .with_claim(claim)
    .with_spec(spec);
    if base.is_commutative() {
        descriptor = descriptor.with_claim(Claim::Commutative);
    }
    if variant == OrbitVariant::Automorphism {
        let inv_base = base.clone();
        let inv_action = action.clone();
        let inv_carrier = carrier_name;
        descriptor = descriptor.with_involution(Involution::Map {
            label: "orbit-inverse".into(),
            map: Arc::new(move |label: &CarrierElement| {
                let x = lift_orbit(&inv_action, &inv_carrier, label)?;
                let x_inv = inv_base.inverse(&x).ok_or_else(|| {
                    Error::InvalidInput(format!("{x} has no inverse in {}", inv_base.name()))
                })?;
                inv_action.orbit_label(&x_inv)
            }),
        });
    }
    if let Some(elements) = base.elements() {
        let labels: Vec<CarrierElement> = elements
            .iter()
            .map(|x| action.orbit_label(x))
            .collect::<Result<std::collections::BTreeSet<_>>>()?
            .into_iter()
            .collect();
        descriptor = descriptor.with_finite_carrier(labels);
    }

    Ok(OrbitConstruction {
        descriptor: Arc::new(descriptor),
        base: base.clone(),
        action,
        variant,
    })
}

/// Jewett's orbit semiconvo for an affine action of a finite group on a
/// group: δ_{x^H}*δ_{y^H} = (1/c²) Σ_{s,t} δ_{(x^s y^t)^H}.
pub fn orbit_semiconvo(base: &CarrierAlgebra, action: AffineAction) -> Result<OrbitConstruction> {
    orbit_variant_construction(base, action, OrbitVariant::GroupAffine)
}

/// Jewett's orbit hypergroup for H ≤ Aut(G):
/// δ_{x^H}*δ_{y^H} = (1/c) Σ_s δ_{(x^s y)^H}, identity e^H, involution
/// (x⁻¹)^H.  The automorphism property is checked on every convolved pair.
pub fn automorphism_orbit_hypergroup(
    base: &CarrierAlgebra,
    action: AffineAction,
) -> Result<OrbitConstruction> {
    orbit_variant_construction(base, action, OrbitVariant::Automorphism)
}

/// The semigroup version: S any semigroup with identity, H ≤ Aut(S),
/// δ_{s^H}*δ_{t^H} = (1/c) Σ_α δ_{(α(s)·t)^H}.  A semiconvo; no involution.
pub fn semigroup_orbit_semiconvo(
    base: &CarrierAlgebra,
    action: AffineAction,
) -> Result<OrbitConstruction> {
    orbit_variant_construction(base, action, OrbitVariant::SemigroupAutomorphism)
}

/// Verifies that `h` lists a finite subgroup of `g` (with the group identity,
/// closed under products and inverses) and returns (identity, h sorted).
fn check_subgroup(
    g: &CarrierAlgebra,
    h: &[CarrierElement],
) -> Result<(CarrierElement, Vec<CarrierElement>)> {
    let e = g
        .identity()
        .ok_or_else(|| Error::NoIdentity(CarrierElement::Nat(0)))?;
    let set: std::collections::BTreeSet<CarrierElement> = h.iter().cloned().collect();
    if set.is_empty() {
        return Err(Error::NotSubgroup("subgroup list is empty".into()));
    }
    if !set.contains(&e) {
        return Err(Error::NotSubgroup(format!("identity {e} missing")));
    }
    for a in &set {
        match g.inverse(a) {
            Some(inv) if set.contains(&inv) => {}
            Some(inv) => {
                return Err(Error::NotSubgroup(format!("inverse {inv} of {a} missing")))
            }
            None => return Err(Error::NotSubgroup(format!("{a} has no inverse"))),
        }
        for b in &set {
            let ab = g.op(a, b)?;
            if !set.contains(&ab) {
                return Err(Error::NotSubgroup(format!("{a}·{b} = {ab} escapes")));
            }
        }
    }
    Ok((e, set.into_iter().collect()))
}

fn coset_label(
    g: &CarrierAlgebra,
    h: &[CarrierElement],
    x: &CarrierElement,
) -> Result<CarrierElement> {
    let mut members = std::collections::BTreeSet::new();
    for s in h {
        members.insert(g.op(x, s)?);
    }
    Ok(CarrierElement::coset(members))
}

fn double_coset_label(
    g: &CarrierAlgebra,
    h: &[CarrierElement],
    x: &CarrierElement,
) -> Result<CarrierElement> {
    let mut members = std::collections::BTreeSet::new();
    for s in h {
        let sx = g.op(s, x)?;
        for t in h {
            members.insert(g.op(&sx, t)?);
        }
    }
    Ok(CarrierElement::coset(members))
}

fn lift_coset(carrier_name: &str, label: &CarrierElement) -> Result<CarrierElement> {
    match label {
        CarrierElement::Coset(members) if !members.is_empty() => Ok(members[0].clone()),
        _ => Err(Error::OutsideCarrier(
            label.clone(),
            carrier_name.to_string(),
        )),
    }
}

/// The right coset space G/H with δ_{xH}*δ_{yH} = (1/c) Σ_s δ_{xsyH}.
///
/// δ_H is always a right identity; it is a left identity only when H is
/// normal in the subgroup generated by the window, and identity checks
/// report the failure otherwise.
pub fn coset_semiconvo(
    g: &CarrierAlgebra,
    h: &[CarrierElement],
) -> Result<HypergroupDescriptor> {
    let (e, h) = check_subgroup(g, h)?;
    let c = h.len();
    let carrier = CarrierKind::Cosets(Box::new(g.carrier_kind()));
    let carrier_name = carrier.name();
    let identity = coset_label(g, &h, &e)?;
    let name = format!("{}/{{{}}}", g.name(), h.iter().join(","));

    let rule_g = g.clone();
    let rule_h = h.clone();
    let rule_carrier = carrier_name;
    let rule = move |lx: &CarrierElement, ly: &CarrierElement| -> Result<FiniteMeasure> {
        let x = lift_coset(&rule_carrier, lx)?;
        let y = lift_coset(&rule_carrier, ly)?;
        if coset_label(&rule_g, &rule_h, &x)? != *lx {
            return Err(Error::OutsideCarrier(lx.clone(), rule_carrier.clone()));
        }
        if coset_label(&rule_g, &rule_h, &y)? != *ly {
            return Err(Error::OutsideCarrier(ly.clone(), rule_carrier.clone()));
        }
        let w = Rat::new(BigInt::from(1), BigInt::from(c as u64));
        let mut weights = Vec::with_capacity(c);
        for s in &rule_h {
            let xsy = rule_g.op(&rule_g.op(&x, s)?, &y)?;
            weights.push((coset_label(&rule_g, &rule_h, &xsy)?, w.clone()));
        }
        FiniteMeasure::from_weights(weights)
    };

    let mut descriptor = HypergroupDescriptor::new(
        name,
        carrier,
        identity,
        Arc::new(FnRule(rule)),
    )
    .with_claim(Claim::SemiconvoOnly)
    .with_spec(json!({
        "builtin": "coset_semiconvo",
        "params": {"group": g.name(), "subgroup": h.iter().map(|x| x.to_string()).collect::<Vec<_>>()},
    }));
    if let Some(elements) = g.elements() {
        let labels: Vec<CarrierElement> = elements
            .iter()
            .map(|x| coset_label(g, &h, x))
            .collect::<Result<std::collections::BTreeSet<_>>>()?
            .into_iter()
            .collect();
        descriptor = descriptor.with_finite_carrier(labels);
    }
    Ok(descriptor)
}

/// The double coset hypergroup G//H with
/// δ_{HxH}*δ_{HyH} = (1/c) Σ_t δ_{HxtyH}, identity H, involution Hx⁻¹H.
pub fn double_coset_hypergroup(
    g: &CarrierAlgebra,
    h: &[CarrierElement],
) -> Result<HypergroupDescriptor> {
    let (e, h) = check_subgroup(g, h)?;
    let c = h.len();
    let carrier = CarrierKind::Cosets(Box::new(g.carrier_kind()));
    let carrier_name = carrier.name();
    let identity = double_coset_label(g, &h, &e)?;
    let name = format!("{}//{{{}}}", g.name(), h.iter().join(","));

    let rule_g = g.clone();
    let rule_h = h.clone();
    let rule_carrier = carrier_name.clone();
    let rule = move |lx: &CarrierElement, ly: &CarrierElement| -> Result<FiniteMeasure> {
        let x = lift_coset(&rule_carrier, lx)?;
        let y = lift_coset(&rule_carrier, ly)?;
        if double_coset_label(&rule_g, &rule_h, &x)? != *lx {
            return Err(Error::OutsideCarrier(lx.clone(), rule_carrier.clone()));
        }
        if double_coset_label(&rule_g, &rule_h, &y)? != *ly {
            return Err(Error::OutsideCarrier(ly.clone(), rule_carrier.clone()));
        }
        let w = Rat::new(BigInt::from(1), BigInt::from(c as u64));
        let mut weights = Vec::with_capacity(c);
        for t in &rule_h {
            let xty = rule_g.op(&rule_g.op(&x, t)?, &y)?;
            weights.push((double_coset_label(&rule_g, &rule_h, &xty)?, w.clone()));
        }
        FiniteMeasure::from_weights(weights)
    };

    let inv_g = g.clone();
    let inv_h = h.clone();
    let inv_carrier = carrier_name;
    let involution = Involution::Map {
        label: "double-coset-inverse".into(),
        map: Arc::new(move |label: &CarrierElement| {
            let x = lift_coset(&inv_carrier, label)?;
            let x_inv = inv_g.inverse(&x).ok_or_else(|| {
                Error::InvalidInput(format!("{x} has no inverse in {}", inv_g.name()))
            })?;
            double_coset_label(&inv_g, &inv_h, &x_inv)
        }),
    };

    let mut descriptor = HypergroupDescriptor::new(
        name,
        carrier,
        identity,
        Arc::new(FnRule(rule)),
    )
    .with_involution(involution)
    .with_claim(Claim::Hypergroup)
    .with_claim(Claim::Commutative)
    .with_spec(json!({
        "builtin": "double_coset_hypergroup",
        "params": {"group": g.name(), "subgroup": h.iter().map(|x| x.to_string()).collect::<Vec<_>>()},
    }));
    if let Some(elements) = g.elements() {
        let labels: Vec<CarrierElement> = elements
            .iter()
            .map(|x| double_coset_label(g, &h, x))
            .collect::<Result<std::collections::BTreeSet<_>>>()?
            .into_iter()
            .collect();
        descriptor = descriptor.with_finite_carrier(labels);
    }
    Ok(descriptor)
}
