//! Hypergroup/semiconvo descriptors.
//!
//! A descriptor bundles a carrier, a convolution rule, the identity element,
//! an optional involution, and the structural claims a builder is prepared to
//! make.  Claims are exactly that — claims; the axiom checkers in
//! [`crate::axioms`] produce the windowed evidence.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use crate::measure::{convolve_measures, FiniteMeasure};
use dashmap::DashMap;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Pointwise convolution rule: a total function on the carrier.
pub trait ConvolutionRule: Send + Sync {
    fn convolve_points(&self, x: &CarrierElement, y: &CarrierElement) -> Result<FiniteMeasure>;
}

/// Adapter for closures.
pub struct FnRule<F>(pub F);

impl<F> ConvolutionRule for FnRule<F>
where
    F: Fn(&CarrierElement, &CarrierElement) -> Result<FiniteMeasure> + Send + Sync,
{
    fn convolve_points(&self, x: &CarrierElement, y: &CarrierElement) -> Result<FiniteMeasure> {
        (self.0)(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    Commutative,
    Hermitian,
    Hypergroup,
    SemiconvoOnly,
}

impl Claim {
    pub fn label(&self) -> &'static str {
        match self {
            Claim::Commutative => "commutative",
            Claim::Hermitian => "hermitian",
            Claim::Hypergroup => "hypergroup",
            Claim::SemiconvoOnly => "semiconvo-only",
        }
    }
}

/// Involution on the carrier.  The label names the map in reports.
#[derive(Clone)]
pub enum Involution {
    /// x̌ = x (hermitian structures).
    Identity,
    Map {
        label: String,
        map: Arc<dyn Fn(&CarrierElement) -> Result<CarrierElement> + Send + Sync>,
    },
}

impl Involution {
    pub fn label(&self) -> &str {
        match self {
            Involution::Identity => "identity",
            Involution::Map { label, .. } => label,
        }
    }

    pub fn apply(&self, x: &CarrierElement) -> Result<CarrierElement> {
        match self {
            Involution::Identity => Ok(x.clone()),
            Involution::Map { map, .. } => map(x),
        }
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Involution({})", self.label())
    }
}

pub struct HypergroupDescriptor {
    name: String,
    carrier: CarrierKind,
    rule: Arc<dyn ConvolutionRule>,
    identity: CarrierElement,
    involution: Option<Involution>,
    claims: BTreeSet<Claim>,
    /// Finite carriers list every element so tables can be dumped in full.
    finite_carrier: Option<Vec<CarrierElement>>,
    /// Builder-provided construction spec, echoed into descriptor JSON.
    spec: Option<Value>,
    cache: DashMap<(CarrierElement, CarrierElement), FiniteMeasure>,
}

impl fmt::Debug for HypergroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HypergroupDescriptor")
            .field("name", &self.name)
            .field("carrier", &self.carrier.name())
            .field("identity", &self.identity.to_string())
            .field("claims", &self.claims)
            .finish_non_exhaustive()
    }
}

impl HypergroupDescriptor {
    pub fn new(
        name: impl Into<String>,
        carrier: CarrierKind,
        identity: CarrierElement,
        rule: Arc<dyn ConvolutionRule>,
    ) -> Self {
        HypergroupDescriptor {
            name: name.into(),
            carrier,
            rule,
            identity,
            involution: None,
            claims: BTreeSet::new(),
            finite_carrier: None,
            spec: None,
            cache: DashMap::new(),
        }
    }

    /// Marks the structure hermitian: identity involution plus the
    /// commutativity this forces.
    pub fn hermitian(mut self) -> Self {
        self.involution = Some(Involution::Identity);
        self.claims.insert(Claim::Hermitian);
        self.claims.insert(Claim::Commutative);
        self
    }

    pub fn with_involution(mut self, inv: Involution) -> Self {
        self.involution = Some(inv);
        self
    }

    pub fn with_claim(mut self, claim: Claim) -> Self {
        self.claims.insert(claim);
        self
    }

    pub fn with_finite_carrier(mut self, elements: Vec<CarrierElement>) -> Self {
        self.finite_carrier = Some(elements);
        self
    }

    pub fn with_spec(mut self, spec: Value) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &CarrierKind {
        &self.carrier
    }

    pub fn identity(&self) -> &CarrierElement {
        &self.identity
    }

    pub fn claims(&self) -> &BTreeSet<Claim> {
        &self.claims
    }

    pub fn involution(&self) -> Option<&Involution> {
        self.involution.as_ref()
    }

    pub fn finite_carrier(&self) -> Option<&[CarrierElement]> {
        self.finite_carrier.as_deref()
    }

    pub fn spec(&self) -> Option<&Value> {
        self.spec.as_ref()
    }

    /// δ_x * δ_y, memoized.  Ramsey searches revisit the same pairs
    /// combinatorially many times; sweeps that touch each pair once should
    /// prefer [`convolve_uncached`](Self::convolve_uncached).
    pub fn convolve(&self, x: &CarrierElement, y: &CarrierElement) -> Result<FiniteMeasure> {
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let out = self.rule.convolve_points(x, y)?;
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    /// δ_x * δ_y without touching the memo cache.
    pub fn convolve_uncached(
        &self,
        x: &CarrierElement,
        y: &CarrierElement,
    ) -> Result<FiniteMeasure> {
        self.rule.convolve_points(x, y)
    }

    /// Bilinear convolution of measures under this descriptor's rule.
    pub fn convolve_m(&self, mu: &FiniteMeasure, nu: &FiniteMeasure) -> Result<FiniteMeasure> {
        convolve_measures(mu, nu, |x, y| self.convolve(x, y))
    }

    /// δ_F: left-to-right fold of the factors as supplied.  Callers pass
    /// factors in increasing index order.
    pub fn convolve_sequence(&self, xs: &[CarrierElement]) -> Result<FiniteMeasure> {
        let first = xs
            .first()
            .ok_or_else(|| Error::InvalidInput("convolve_sequence needs >= 1 factor".into()))?;
        let mut acc = FiniteMeasure::point_mass(first.clone());
        for x in &xs[1..] {
            let point = FiniteMeasure::point_mass(x.clone());
            acc = self.convolve_m(&acc, &point)?;
        }
        Ok(acc)
    }

    pub fn involute(&self, x: &CarrierElement) -> Result<CarrierElement> {
        self.involution
            .as_ref()
            .ok_or(Error::NoInvolution)?
            .apply(x)
    }

    /// Image measure μ̌ under the involution.
    pub fn involute_measure(&self, mu: &FiniteMeasure) -> Result<FiniteMeasure> {
        let inv = self.involution.as_ref().ok_or(Error::NoInvolution)?;
        mu.try_map_elements(|x| inv.apply(x))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// Descriptor JSON.  Finite-carrier rules additionally dump the full
    /// (x, y) → measure table.
    pub fn to_json(&self) -> Result<Value> {
        let mut out = serde_json::Map::new();
        out.insert("name".into(), json!(self.name));
        out.insert("carrier".into(), json!(self.carrier.name()));
        out.insert("identity".into(), self.identity.to_json());
        if let Some(spec) = &self.spec {
            out.insert("builtin".into(), spec.clone());
        }
        if let Some(elements) = &self.finite_carrier {
            let mut rows = Vec::with_capacity(elements.len());
            for x in elements {
                let mut row = Vec::with_capacity(elements.len());
                for y in elements {
                    row.push(self.convolve(x, y)?.to_json());
                }
                rows.push(Value::Array(row));
            }
            out.insert(
                "table".into(),
                json!({
                    "elements": elements.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
                    "measures": rows,
                }),
            );
        }
        out.insert(
            "involution".into(),
            match &self.involution {
                Some(inv) => json!(inv.label()),
                None => json!("none"),
            },
        );
        out.insert(
            "claims".into(),
            json!(self
                .claims
                .iter()
                .map(|c| c.label())
                .collect::<Vec<_>>()),
        );
        Ok(Value::Object(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    /// Toy hermitian rule used by several tests below: δ_x*δ_y = δ_{x+y}.
    fn shift_descriptor() -> HypergroupDescriptor {
        let rule = FnRule(|x: &CarrierElement, y: &CarrierElement| {
            Ok(FiniteMeasure::point_mass(nat(
                x.as_nat().unwrap() + y.as_nat().unwrap(),
            )))
        });
        HypergroupDescriptor::new("shift", CarrierKind::NonNegInt, nat(0), Arc::new(rule))
            .hermitian()
    }

    #[test]
    fn convolve_is_memoized_and_stable() {
        let k = shift_descriptor();
        let a = k.convolve(&nat(2), &nat(3)).unwrap();
        assert_eq!(k.cache_len(), 1);
        let b = k.convolve(&nat(2), &nat(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(k.cache_len(), 1);
        assert_eq!(k.convolve_uncached(&nat(2), &nat(3)).unwrap(), a);
        assert_eq!(k.cache_len(), 1);
    }

    #[test]
    fn convolve_sequence_folds_left_to_right() {
        let k = shift_descriptor();
        assert_eq!(
            k.convolve_sequence(&[nat(1)]).unwrap(),
            FiniteMeasure::point_mass(nat(1))
        );
        assert_eq!(
            k.convolve_sequence(&[nat(1), nat(2), nat(4)]).unwrap(),
            FiniteMeasure::point_mass(nat(7))
        );
        assert!(k.convolve_sequence(&[]).is_err());
    }

    #[test]
    fn hermitian_sets_identity_involution() {
        let k = shift_descriptor();
        assert_eq!(k.involute(&nat(9)).unwrap(), nat(9));
        assert!(k.claims().contains(&Claim::Hermitian));
        assert!(k.claims().contains(&Claim::Commutative));
        let mu = FiniteMeasure::from_weights([(nat(1), rat(1, 2)), (nat(5), rat(1, 2))]).unwrap();
        assert_eq!(k.involute_measure(&mu).unwrap(), mu);
    }

    #[test]
    fn involution_map_applies() {
        let neg = Involution::Map {
            label: "negate".into(),
            map: Arc::new(|x: &CarrierElement| Ok(CarrierElement::Int(-x.as_int().unwrap()))),
        };
        let rule = FnRule(|x: &CarrierElement, _: &CarrierElement| {
            Ok(FiniteMeasure::point_mass(x.clone()))
        });
        let k = HypergroupDescriptor::new(
            "toy",
            CarrierKind::Int,
            CarrierElement::Int(0),
            Arc::new(rule),
        )
        .with_involution(neg);
        assert_eq!(k.involute(&CarrierElement::Int(4)).unwrap(), CarrierElement::Int(-4));
    }

    #[test]
    fn descriptor_json_shape() {
        let k = shift_descriptor().with_spec(json!({"builtin": "shift", "params": {}}));
        let v = k.to_json().unwrap();
        assert_eq!(v["name"], json!("shift"));
        assert_eq!(v["carrier"], json!("Z+"));
        assert_eq!(v["involution"], json!("identity"));
        assert_eq!(v["claims"], json!(["commutative", "hermitian"]));
        assert_eq!(v["builtin"]["builtin"], json!("shift"));
        assert!(v.get("table").is_none());
    }
}
