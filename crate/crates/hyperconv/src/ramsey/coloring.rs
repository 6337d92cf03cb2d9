//! Finite colorings of carriers.
//!
//! Classes are numbered 1..=r.  Builtin colorings are defined on integer-like
//! points; everything else (orbit spaces, finite tables) is colored through an
//! explicit `Table` assignment.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coloring {
    /// n ↦ (n mod k) + 1.
    ModK { k: u64 },
    /// Classes C_i = {n ≡ i−1 (mod 4ᵏ)}; arity 4ᵏ.
    Mod4k { k: u32 },
    /// Two colors on ℤ₊ in blocks of lengths 1, 1, 2, 3, 4, …:
    /// {0}, {1}, {2,3}, {4,5,6}, …, alternating.
    TriangularTwo,
    /// Explicit finite assignment; classify is a hard error off the map.
    Table {
        map: BTreeMap<CarrierElement, u64>,
        r: u64,
    },
}

impl Coloring {
    pub fn mod_k(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ParamRange("mod_k requires k >= 1".into()));
        }
        Ok(Coloring::ModK { k })
    }

    pub fn mod_4k(k: u32) -> Result<Self> {
        if !(1..=10).contains(&k) {
            return Err(Error::ParamRange(format!(
                "mod_4k requires 1 <= k <= 10, got {k}"
            )));
        }
        Ok(Coloring::Mod4k { k })
    }

    pub fn triangular_two() -> Self {
        Coloring::TriangularTwo
    }

    pub fn table(map: BTreeMap<CarrierElement, u64>, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::ParamRange("table coloring requires r >= 1".into()));
        }
        if let Some((x, c)) = map.iter().find(|(_, c)| **c == 0 || **c > r) {
            return Err(Error::InvalidInput(format!(
                "table maps {x} to class {c}, outside 1..={r}"
            )));
        }
        Ok(Coloring::Table { map, r })
    }

    pub fn arity(&self) -> u64 {
        match self {
            Coloring::ModK { k } => *k,
            Coloring::Mod4k { k } => 4u64.pow(*k),
            Coloring::TriangularTwo => 2,
            Coloring::Table { r, .. } => *r,
        }
    }

    /// Class of `x` in 1..=arity.
    pub fn classify(&self, x: &CarrierElement) -> Result<u64> {
        match self {
            Coloring::ModK { k } => Ok(residue(x, *k)? + 1),
            Coloring::Mod4k { k } => Ok(residue(x, 4u64.pow(*k))? + 1),
            Coloring::TriangularTwo => {
                let n = x
                    .as_nat()
                    .ok_or_else(|| Error::ColoringDomain(x.clone()))?;
                Ok(1 + triangular_block(n) % 2)
            }
            Coloring::Table { map, .. } => map
                .get(x)
                .copied()
                .ok_or_else(|| Error::ColoringDomain(x.clone())),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Coloring::ModK { k } => format!("mod-{k}"),
            Coloring::Mod4k { k } => format!("mod-4^{k}"),
            Coloring::TriangularTwo => "triangular-2".into(),
            Coloring::Table { r, .. } => format!("table(r={r})"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Coloring::ModK { k } => json!({"kind": "mod_k", "k": k}),
            Coloring::Mod4k { k } => json!({"kind": "mod_4k", "k": k}),
            Coloring::TriangularTwo => json!({"kind": "triangular2"}),
            Coloring::Table { map, r } => json!({
                "kind": "table",
                "r": r,
                "map": map
                    .iter()
                    .map(|(x, c)| json!({"elem": x.to_json(), "class": c}))
                    .collect::<Vec<_>>(),
            }),
        }
    }

    /// Reads the `{"kind": …}` coloring spec; `kind` resolves table keys.
    pub fn from_json(v: &Value, carrier: &CarrierKind) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidInput("coloring spec needs a \"kind\" string".into()))?;
        let int_field = |name: &str| {
            v.get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidInput(format!("coloring spec needs integer \"{name}\"")))
        };
        match kind {
            "mod_k" => Coloring::mod_k(int_field("k")?),
            "mod_4k" => {
                let k = int_field("k")?;
                Coloring::mod_4k(u32::try_from(k).map_err(|_| {
                    Error::ParamRange(format!("mod_4k k = {k} is out of range"))
                })?)
            }
            "triangular2" => Ok(Coloring::TriangularTwo),
            "table" => {
                let r = int_field("r")?;
                let entries = v.get("map").and_then(Value::as_array).ok_or_else(|| {
                    Error::InvalidInput("table coloring needs a \"map\" array".into())
                })?;
                let mut map = BTreeMap::new();
                for entry in entries {
                    let elem = entry.get("elem").ok_or_else(|| {
                        Error::InvalidInput("table entry missing \"elem\"".into())
                    })?;
                    let class = entry.get("class").and_then(Value::as_u64).ok_or_else(|| {
                        Error::InvalidInput("table entry missing integer \"class\"".into())
                    })?;
                    map.insert(carrier.parse_element(elem)?, class);
                }
                Coloring::table(map, r)
            }
            other => Err(Error::InvalidInput(format!("unknown coloring kind {other:?}"))),
        }
    }
}

fn residue(x: &CarrierElement, modulus: u64) -> Result<u64> {
    match x {
        CarrierElement::Nat(n) => Ok(n % modulus),
        CarrierElement::Int(n) => Ok(n.rem_euclid(modulus as i64) as u64),
        _ => Err(Error::ColoringDomain(x.clone())),
    }
}

/// Index (from 0) of the triangular block containing n: block 0 is {0} and
/// block b ≥ 1 covers [1 + b(b−1)/2, b(b+1)/2], so it has length b.
fn triangular_block(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    // Smallest b with b(b+1)/2 >= n, seeded from the real root and fixed up.
    let mut b = (((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0).floor() as u64;
    while b * (b + 1) / 2 < n {
        b += 1;
    }
    while b > 1 && (b - 1) * b / 2 >= n {
        b -= 1;
    }
    b
}
