//! Finitely supported probability measures with exact rational weights.
//!
//! `FiniteMeasure` is the value type of every convolution in the crate.  The
//! constructor enforces the two invariants everything downstream relies on:
//! all weights strictly positive (zeros are stripped) and total mass exactly
//! one.  Measure equality is structural equality of the reduced weight maps,
//! so golden-value tests are bit-exact.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use crate::rational::{bigint_to_json_number, json_number_to_bigint, rat_to_string, Rat};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasure {
    weights: BTreeMap<CarrierElement, Rat>,
}

impl FiniteMeasure {
    /// Combines like terms, strips exact zeros, and verifies the invariants.
    pub fn from_weights<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CarrierElement, Rat)>,
    {
        let mut weights: BTreeMap<CarrierElement, Rat> = BTreeMap::new();
        let mut total = Rat::zero();
        for (x, w) in entries {
            if w.is_zero() {
                continue;
            }
            if w.is_negative() {
                return Err(Error::NonPositiveWeight(x, rat_to_string(&w)));
            }
            total += &w;
            *weights.entry(x).or_insert_with(Rat::zero) += w;
        }
        if !total.is_one() {
            return Err(Error::MassNotOne(rat_to_string(&total)));
        }
        Ok(FiniteMeasure { weights })
    }

    pub fn point_mass(x: CarrierElement) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(x, Rat::one());
        FiniteMeasure { weights }
    }

    /// Weight at `x`; zero off the support.
    pub fn weight(&self, x: &CarrierElement) -> Rat {
        self.weights.get(x).cloned().unwrap_or_else(Rat::zero)
    }

    /// Σ_{x ∈ S} μ({x}); zero for disjoint sets.
    pub fn mass(&self, s: &BTreeSet<CarrierElement>) -> Rat {
        // Walk the smaller of the two sets.
        if s.len() <= self.weights.len() {
            s.iter().map(|x| self.weight(x)).sum()
        } else {
            self.weights
                .iter()
                .filter(|(x, _)| s.contains(*x))
                .map(|(_, w)| w.clone())
                .sum()
        }
    }

    /// Σ over support elements satisfying the predicate.
    pub fn mass_where<F: Fn(&CarrierElement) -> bool>(&self, pred: F) -> Rat {
        self.weights
            .iter()
            .filter(|(x, _)| pred(x))
            .map(|(_, w)| w.clone())
            .sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &CarrierElement> {
        self.weights.keys()
    }

    pub fn support_set(&self) -> BTreeSet<CarrierElement> {
        self.weights.keys().cloned().collect()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// The unique support point, if the measure is a point mass.
    pub fn as_point_mass(&self) -> Option<&CarrierElement> {
        if self.weights.len() == 1 {
            self.weights.keys().next()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CarrierElement, &Rat)> {
        self.weights.iter()
    }

    /// Convex combination Σ aᵢ·μᵢ; the aᵢ must be non-negative and sum to 1.
    pub fn mix(parts: &[(Rat, &FiniteMeasure)]) -> Result<Self> {
        let mut entries: Vec<(CarrierElement, Rat)> = Vec::new();
        for (a, mu) in parts {
            if a.is_negative() {
                return Err(Error::InvalidInput(format!(
                    "mixture coefficient {} is negative",
                    rat_to_string(a)
                )));
            }
            for (x, w) in mu.iter() {
                entries.push((x.clone(), a * w));
            }
        }
        FiniteMeasure::from_weights(entries)
    }

    /// Push-forward along `f`: weights of elements with a common image add up.
    /// Total mass is preserved, so the result is again a probability measure.
    pub fn map_elements<F: Fn(&CarrierElement) -> CarrierElement>(&self, f: F) -> Self {
        let mut weights: BTreeMap<CarrierElement, Rat> = BTreeMap::new();
        for (x, w) in &self.weights {
            *weights.entry(f(x)).or_insert_with(Rat::zero) += w;
        }
        FiniteMeasure { weights }
    }

    /// Fallible push-forward, for projections that can reject an element.
    pub fn try_map_elements<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&CarrierElement) -> Result<CarrierElement>,
    {
        let mut weights: BTreeMap<CarrierElement, Rat> = BTreeMap::new();
        for (x, w) in &self.weights {
            *weights.entry(f(x)?).or_insert_with(Rat::zero) += w;
        }
        Ok(FiniteMeasure { weights })
    }

    /// Serializes as `{"weights": [{"elem", "num", "den"}, …]}` in canonical
    /// carrier order with reduced fractions.
    pub fn to_json(&self) -> Value {
        let weights: Vec<Value> = self
            .weights
            .iter()
            .map(|(x, w)| {
                json!({
                    "elem": x.to_json(),
                    "num": Value::Number(bigint_to_json_number(w.numer())),
                    "den": Value::Number(bigint_to_json_number(w.denom())),
                })
            })
            .collect();
        json!({ "weights": weights })
    }

    pub fn from_json(v: &Value, kind: &CarrierKind) -> Result<Self> {
        let entries = v
            .get("weights")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("measure JSON must have a \"weights\" array".into()))?;
        let mut pairs = Vec::with_capacity(entries.len());
        for entry in entries {
            let elem = entry
                .get("elem")
                .ok_or_else(|| Error::InvalidInput("weight entry missing \"elem\"".into()))?;
            let num = entry
                .get("num")
                .and_then(Value::as_number)
                .ok_or_else(|| Error::InvalidInput("weight entry missing integer \"num\"".into()))?;
            let den = entry
                .get("den")
                .and_then(Value::as_number)
                .ok_or_else(|| Error::InvalidInput("weight entry missing integer \"den\"".into()))?;
            let den = json_number_to_bigint(den)?;
            if den.is_zero() {
                return Err(Error::InvalidInput("weight entry has zero \"den\"".into()));
            }
            pairs.push((
                kind.parse_element(elem)?,
                Rat::new(json_number_to_bigint(num)?, den),
            ));
        }
        FiniteMeasure::from_weights(pairs)
    }
}

impl fmt::Display for FiniteMeasure {
    /// Renders `1/4*d_0 + 3/4*d_2` in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, w)) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_one() {
                write!(f, "d_{x}")?;
            } else {
                write!(f, "{}*d_{x}", rat_to_string(w))?;
            }
        }
        Ok(())
    }
}

/// Bilinear extension of a point rule: Σ_x Σ_y μ(x)·ν(y)·rule(x,y).
pub fn convolve_measures<F>(mu: &FiniteMeasure, nu: &FiniteMeasure, mut rule: F) -> Result<FiniteMeasure>
where
    F: FnMut(&CarrierElement, &CarrierElement) -> Result<FiniteMeasure>,
{
    let mut acc: BTreeMap<CarrierElement, Rat> = BTreeMap::new();
    for (x, a) in mu.iter() {
        for (y, b) in nu.iter() {
            let ab = a * b;
            let pointwise = rule(x, y)?;
            for (z, w) in pointwise.iter() {
                *acc.entry(z.clone()).or_insert_with(Rat::zero) += &ab * w;
            }
        }
    }
    FiniteMeasure::from_weights(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    fn half_half(a: u64, b: u64) -> FiniteMeasure {
        FiniteMeasure::from_weights([(nat(a), rat(1, 2)), (nat(b), rat(1, 2))]).unwrap()
    }

    #[test]
    fn point_mass_is_unit_weight() {
        let mu = FiniteMeasure::point_mass(nat(0));
        assert_eq!(mu.weight(&nat(0)), rat(1, 1));
        assert_eq!(mu.mass(&BTreeSet::from([nat(5)])), rat(0, 1));
        let orbit = CarrierElement::orbit([CarrierElement::Int(2), CarrierElement::Int(-2)]);
        let mu = FiniteMeasure::point_mass(orbit.clone());
        assert_eq!(mu.as_point_mass(), Some(&orbit));
    }

    #[test]
    fn constructor_combines_and_strips() {
        let mu = FiniteMeasure::from_weights([
            (nat(1), rat(1, 4)),
            (nat(1), rat(1, 4)),
            (nat(2), rat(1, 2)),
            (nat(7), rat(0, 1)),
        ])
        .unwrap();
        assert_eq!(mu.weight(&nat(1)), rat(1, 2));
        assert_eq!(mu.support_set(), BTreeSet::from([nat(1), nat(2)]));
    }

    #[test]
    fn constructor_rejects_bad_mass() {
        assert!(matches!(
            FiniteMeasure::from_weights([(nat(0), rat(1, 2))]),
            Err(Error::MassNotOne(_))
        ));
        assert!(matches!(
            FiniteMeasure::from_weights([(nat(0), rat(3, 2)), (nat(1), rat(-1, 2))]),
            Err(Error::NonPositiveWeight(_, _))
        ));
    }

    #[test]
    fn mass_examples() {
        let mu = half_half(1, 5);
        assert_eq!(mu.mass(&BTreeSet::from([nat(1)])), rat(1, 2));
        assert_eq!(FiniteMeasure::point_mass(nat(3)).mass(&BTreeSet::new()), rat(0, 1));
        let cp2_11 =
            FiniteMeasure::from_weights([(nat(0), rat(1, 4)), (nat(2), rat(3, 4))]).unwrap();
        assert_eq!(cp2_11.mass(&BTreeSet::from([nat(0), nat(2)])), rat(1, 1));
        assert_eq!(cp2_11.mass(&cp2_11.support_set()), rat(1, 1));
    }

    #[test]
    fn support_examples() {
        assert_eq!(half_half(1, 5).support_set(), BTreeSet::from([nat(1), nat(5)]));
        assert_eq!(
            FiniteMeasure::point_mass(nat(0)).support_set(),
            BTreeSet::from([nat(0)])
        );
    }

    #[test]
    fn convolve_with_additive_rule() {
        // Toy rule δ_x*δ_y = δ_{x+y}: convolution of supports {1,5}×{1} shifts.
        let rule = |x: &CarrierElement, y: &CarrierElement| {
            Ok(FiniteMeasure::point_mass(nat(
                x.as_nat().unwrap() + y.as_nat().unwrap(),
            )))
        };
        let out = convolve_measures(&half_half(1, 5), &FiniteMeasure::point_mass(nat(1)), rule)
            .unwrap();
        assert_eq!(out, half_half(2, 6));
    }

    #[test]
    fn convolve_combines_like_terms() {
        // Constant rule: every pair maps to δ_0, so any inputs give δ_0.
        let rule = |_: &CarrierElement, _: &CarrierElement| Ok(FiniteMeasure::point_mass(nat(0)));
        let out = convolve_measures(&half_half(1, 5), &half_half(2, 3), rule).unwrap();
        assert_eq!(out, FiniteMeasure::point_mass(nat(0)));
    }

    #[test]
    fn mix_is_exact() {
        let a = FiniteMeasure::point_mass(nat(1));
        let b = FiniteMeasure::point_mass(nat(5));
        let mu = FiniteMeasure::mix(&[(rat(1, 2), &a), (rat(1, 2), &b)]).unwrap();
        assert_eq!(mu, half_half(1, 5));
        assert!(FiniteMeasure::mix(&[(rat(1, 3), &a)]).is_err());
    }

    #[test]
    fn map_elements_merges_fibres() {
        let mu = half_half(1, 5);
        let pushed = mu.map_elements(|_| nat(9));
        assert_eq!(pushed, FiniteMeasure::point_mass(nat(9)));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let mu = FiniteMeasure::from_weights([
            (nat(2), rat(3, 4)),
            (nat(0), rat(1, 4)),
        ])
        .unwrap();
        let v = mu.to_json();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"weights":[{"elem":0,"num":1,"den":4},{"elem":2,"num":3,"den":4}]}"#
        );
        let back = FiniteMeasure::from_json(&v, &CarrierKind::NonNegInt).unwrap();
        assert_eq!(back, mu);
    }

    #[test]
    fn json_rejects_malformed() {
        let bad = serde_json::json!({"weights": [{"elem": 0, "num": 1, "den": 0}]});
        assert!(FiniteMeasure::from_json(&bad, &CarrierKind::NonNegInt).is_err());
        let bad = serde_json::json!({"weights": [{"elem": 0, "num": 1, "den": 2}]});
        assert!(matches!(
            FiniteMeasure::from_json(&bad, &CarrierKind::NonNegInt),
            Err(Error::MassNotOne(_))
        ));
    }
}
