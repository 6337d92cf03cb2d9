//! Carrier elements and carrier kinds.
//!
//! A single enum covers every carrier used by the crate: integer-like points,
//! pairs, indices into finite tables, and the set-valued points (orbits,
//! cosets) produced by quotient constructions.  A total order on elements
//! fixes the canonical serialization order of measures.

use crate::error::{Error, Result};
use serde_json::Value;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A point of some carrier.
///
/// `Orbit` and `Coset` hold canonically sorted, deduplicated member lists so
/// that structural equality coincides with set equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CarrierElement {
    Nat(u64),
    Int(i64),
    IntPair(i64, i64),
    NatPair(u64, u64),
    /// Entry of an explicit finite table: position in the table plus its name.
    Sym(u32, Arc<str>),
    /// A finite set of elements, as produced by orbit maps.
    Orbit(Vec<CarrierElement>),
    /// A coset `xH`, kept distinct from `Orbit` so reports read naturally.
    Coset(Vec<CarrierElement>),
}

impl CarrierElement {
    pub fn nat(n: u64) -> Self {
        CarrierElement::Nat(n)
    }

    pub fn int(n: i64) -> Self {
        CarrierElement::Int(n)
    }

    pub fn sym(index: u32, name: &str) -> Self {
        CarrierElement::Sym(index, Arc::from(name))
    }

    /// Builds an orbit point: sorts and deduplicates the member list.
    pub fn orbit<I: IntoIterator<Item = CarrierElement>>(members: I) -> Self {
        let set: BTreeSet<CarrierElement> = members.into_iter().collect();
        CarrierElement::Orbit(set.into_iter().collect())
    }

    /// Builds a coset point: sorts and deduplicates the member list.
    pub fn coset<I: IntoIterator<Item = CarrierElement>>(members: I) -> Self {
        let set: BTreeSet<CarrierElement> = members.into_iter().collect();
        CarrierElement::Coset(set.into_iter().collect())
    }

    /// The underlying natural number, if this is a `Nat` point.
    pub fn as_nat(&self) -> Option<u64> {
        match self {
            CarrierElement::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            CarrierElement::Int(n) => Some(*n),
            _ => None,
        }
    }

    /// Members of an `Orbit`/`Coset` point.
    pub fn members(&self) -> Option<&[CarrierElement]> {
        match self {
            CarrierElement::Orbit(v) | CarrierElement::Coset(v) => Some(v),
            _ => None,
        }
    }

    /// JSON form used inside measure and report payloads.
    pub fn to_json(&self) -> Value {
        use serde_json::json;
        match self {
            CarrierElement::Nat(n) => json!(n),
            CarrierElement::Int(n) => json!(n),
            CarrierElement::IntPair(a, b) => json!([a, b]),
            CarrierElement::NatPair(a, b) => json!([a, b]),
            CarrierElement::Sym(_, name) => Value::String(name.to_string()),
            CarrierElement::Orbit(v) => json!({
                "orbit": v.iter().map(|e| e.to_json()).collect::<Vec<_>>()
            }),
            CarrierElement::Coset(v) => json!({
                "coset": v.iter().map(|e| e.to_json()).collect::<Vec<_>>()
            }),
        }
    }
}

impl fmt::Display for CarrierElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierElement::Nat(n) => write!(f, "{n}"),
            CarrierElement::Int(n) => write!(f, "{n}"),
            CarrierElement::IntPair(a, b) => write!(f, "({a},{b})"),
            CarrierElement::NatPair(a, b) => write!(f, "({a},{b})"),
            CarrierElement::Sym(_, name) => write!(f, "{name}"),
            CarrierElement::Orbit(v) | CarrierElement::Coset(v) => {
                write!(f, "{{")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// Which carrier a descriptor lives on.  Determines how elements in JSON
/// payloads are read back and how membership is screened before a rule runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierKind {
    /// ℤ₊ = {0, 1, 2, …}
    NonNegInt,
    /// ℤ
    Int,
    /// ℤ × ℤ
    IntPair,
    /// ℤ₊ × ℤ₊
    NatPair,
    /// (ℤ × {1, 2, …}) ∪ {(0,0)}, the mixed-product semigroup with identity adjoined
    MixedZxN,
    /// Explicit finite element list (tables, materialized quotients)
    Finite(Vec<Arc<str>>),
    /// Orbits of elements of the inner carrier
    Orbits(Box<CarrierKind>),
    /// Cosets of elements of the inner carrier
    Cosets(Box<CarrierKind>),
}

impl CarrierKind {
    pub fn finite(names: &[&str]) -> Self {
        CarrierKind::Finite(names.iter().map(|s| Arc::from(*s)).collect())
    }

    /// Display name used in descriptor JSON.
    pub fn name(&self) -> String {
        match self {
            CarrierKind::NonNegInt => "Z+".into(),
            CarrierKind::Int => "Z".into(),
            CarrierKind::IntPair => "ZxZ".into(),
            CarrierKind::NatPair => "Z+xZ+".into(),
            CarrierKind::MixedZxN => "ZxN+identity".into(),
            CarrierKind::Finite(names) => {
                format!(
                    "finite[{}]",
                    names
                        .iter()
                        .map(|s| s.as_ref())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
            CarrierKind::Orbits(inner) => format!("orbits({})", inner.name()),
            CarrierKind::Cosets(inner) => format!("cosets({})", inner.name()),
        }
    }

    /// Loose membership screen; rules still own their exact domains.
    pub fn contains(&self, x: &CarrierElement) -> bool {
        match (self, x) {
            (CarrierKind::NonNegInt, CarrierElement::Nat(_)) => true,
            (CarrierKind::Int, CarrierElement::Int(_)) => true,
            (CarrierKind::IntPair, CarrierElement::IntPair(_, _)) => true,
            (CarrierKind::NatPair, CarrierElement::NatPair(_, _)) => true,
            (CarrierKind::MixedZxN, CarrierElement::IntPair(x, y)) => {
                (*x == 0 && *y == 0) || *y >= 1
            }
            (CarrierKind::Finite(names), CarrierElement::Sym(i, name)) => {
                names.get(*i as usize).map(|n| n.as_ref()) == Some(name.as_ref())
            }
            (CarrierKind::Orbits(inner), CarrierElement::Orbit(v)) => {
                v.iter().all(|e| inner.contains(e))
            }
            (CarrierKind::Cosets(inner), CarrierElement::Coset(v)) => {
                v.iter().all(|e| inner.contains(e))
            }
            _ => false,
        }
    }

    /// Reads one element from its JSON form.
    pub fn parse_element(&self, v: &Value) -> Result<CarrierElement> {
        let fail = || Error::InvalidInput(format!("cannot read {v} as an element of {}", self.name()));
        let elem = match self {
            CarrierKind::NonNegInt => CarrierElement::Nat(v.as_u64().ok_or_else(fail)?),
            CarrierKind::Int => CarrierElement::Int(v.as_i64().ok_or_else(fail)?),
            CarrierKind::IntPair | CarrierKind::MixedZxN => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(fail)?;
                CarrierElement::IntPair(
                    arr[0].as_i64().ok_or_else(fail)?,
                    arr[1].as_i64().ok_or_else(fail)?,
                )
            }
            CarrierKind::NatPair => {
                let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(fail)?;
                CarrierElement::NatPair(
                    arr[0].as_u64().ok_or_else(fail)?,
                    arr[1].as_u64().ok_or_else(fail)?,
                )
            }
            CarrierKind::Finite(names) => {
                let s = v.as_str().ok_or_else(fail)?;
                let i = names
                    .iter()
                    .position(|n| n.as_ref() == s)
                    .ok_or_else(fail)?;
                CarrierElement::Sym(i as u32, names[i].clone())
            }
            CarrierKind::Orbits(inner) => {
                let arr = v
                    .get("orbit")
                    .and_then(Value::as_array)
                    .ok_or_else(fail)?;
                CarrierElement::orbit(
                    arr.iter()
                        .map(|e| inner.parse_element(e))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            CarrierKind::Cosets(inner) => {
                let arr = v
                    .get("coset")
                    .and_then(Value::as_array)
                    .ok_or_else(fail)?;
                CarrierElement::coset(
                    arr.iter()
                        .map(|e| inner.parse_element(e))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        if self.contains(&elem) {
            Ok(elem)
        } else {
            Err(Error::OutsideCarrier(elem, self.name()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_constructor_canonicalizes() {
        let a = CarrierElement::orbit([
            CarrierElement::Int(3),
            CarrierElement::Int(-3),
            CarrierElement::Int(3),
        ]);
        let b = CarrierElement::orbit([CarrierElement::Int(-3), CarrierElement::Int(3)]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{-3,3}");
    }

    #[test]
    fn ordering_is_total_and_stable() {
        let mut v = vec![
            CarrierElement::Nat(4),
            CarrierElement::Nat(0),
            CarrierElement::Nat(2),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                CarrierElement::Nat(0),
                CarrierElement::Nat(2),
                CarrierElement::Nat(4)
            ]
        );
    }

    #[test]
    fn json_round_trip_per_kind() {
        let cases: Vec<(CarrierKind, CarrierElement)> = vec![
            (CarrierKind::NonNegInt, CarrierElement::Nat(5)),
            (CarrierKind::Int, CarrierElement::Int(-3)),
            (CarrierKind::IntPair, CarrierElement::IntPair(-1, 2)),
            (CarrierKind::NatPair, CarrierElement::NatPair(0, 7)),
            (CarrierKind::MixedZxN, CarrierElement::IntPair(0, 0)),
            (
                CarrierKind::finite(&["e", "a", "b"]),
                CarrierElement::sym(1, "a"),
            ),
            (
                CarrierKind::Orbits(Box::new(CarrierKind::Int)),
                CarrierElement::orbit([CarrierElement::Int(1), CarrierElement::Int(-1)]),
            ),
        ];
        for (kind, elem) in cases {
            let json = elem.to_json();
            assert_eq!(kind.parse_element(&json).unwrap(), elem, "kind {kind:?}");
        }
    }

    #[test]
    fn membership_screen() {
        assert!(CarrierKind::MixedZxN.contains(&CarrierElement::IntPair(-4, 2)));
        assert!(!CarrierKind::MixedZxN.contains(&CarrierElement::IntPair(1, 0)));
        assert!(CarrierKind::MixedZxN.contains(&CarrierElement::IntPair(0, 0)));
        assert!(!CarrierKind::NonNegInt.contains(&CarrierElement::Int(3)));
        let err = CarrierKind::MixedZxN
            .parse_element(&serde_json::json!([1, 0]))
            .unwrap_err();
        assert!(matches!(err, Error::OutsideCarrier(_, _)));
    }
}
