//! Carrier algebras: the groups and semigroups underlying the constructions.
//!
//! Builtin kinds are lazy (ops compute on demand, nothing materialized);
//! finite tables are validated exhaustively — closure, associativity, and the
//! identity law are checked once at construction time.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Debug, Clone)]
enum Kind {
    /// (ℤ, +)
    IntAdd,
    /// (ℤ×ℤ, +)
    IntPairAdd,
    /// (ℤ₊, +)
    NonNegAdd,
    /// (ℤ₊, max)
    NonNegMax,
    /// (ℤ₊×ℤ₊, +) componentwise
    NatPairAdd,
    /// (ℤ×{1,2,…}) ∪ {(0,0)} with (x,y)·(x′,y′) = (x+x′, max{y,y′})
    MixedZxN,
    /// {0,…,k−1} ∪ (kℕ+1) with (x,y) ↦ (x+y) mod k
    Sk(u64),
    Table(Arc<FiniteTable>),
}

/// Explicit finite multiplication table, validated at construction.
#[derive(Debug)]
pub struct FiniteTable {
    names: Vec<Arc<str>>,
    /// Row-major: product[i*n + j] = index of (element i)·(element j).
    product: Vec<u32>,
    identity: Option<u32>,
    /// Present only when `identity` exists and every element has a two-sided
    /// inverse (i.e. the table is a group).
    inverse: Option<Vec<u32>>,
    commutative: bool,
}

impl FiniteTable {
    fn new(names: Vec<Arc<str>>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty element list".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable(format!(
                "product table must be {n}x{n} to match the element list"
            )));
        }
        let mut product = Vec::with_capacity(n * n);
        for row in &rows {
            for &v in row {
                if v as usize >= n {
                    return Err(Error::InvalidTable(format!(
                        "table entry {v} is not a valid element index (< {n})"
                    )));
                }
                product.push(v);
            }
        }
        let mul = |i: usize, j: usize| product[i * n + j] as usize;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if mul(mul(i, j), k) != mul(i, mul(j, k)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({}, {}, {}): ({}·{})·{} = {} but {}·({}·{}) = {}",
                            names[i],
                            names[j],
                            names[k],
                            names[i],
                            names[j],
                            names[k],
                            names[mul(mul(i, j), k)],
                            names[i],
                            names[j],
                            names[k],
                            names[mul(i, mul(j, k))],
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .map(|e| e as u32);
        let inverse = identity.and_then(|e| {
            let e = e as usize;
            (0..n)
                .map(|x| {
                    (0..n)
                        .find(|&y| mul(x, y) == e && mul(y, x) == e)
                        .map(|y| y as u32)
                })
                .collect::<Option<Vec<u32>>>()
        });
        let commutative = (0..n).all(|i| (i..n).all(|j| mul(i, j) == mul(j, i)));
        Ok(FiniteTable {
            names,
            product,
            identity,
            inverse,
            commutative,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn element(&self, i: usize) -> CarrierElement {
        CarrierElement::Sym(i as u32, self.names[i].clone())
    }

    pub fn index_of(&self, x: &CarrierElement) -> Option<usize> {
        match x {
            CarrierElement::Sym(i, name)
                if self.names.get(*i as usize).map(|n| n.as_ref()) == Some(name.as_ref()) =>
            {
                Some(*i as usize)
            }
            _ => None,
        }
    }
}

/// A group or semigroup structure on a carrier.
#[derive(Debug, Clone)]
pub struct CarrierAlgebra {
    name: String,
    kind: Kind,
}

impl CarrierAlgebra {
    pub fn int_add() -> Self {
        CarrierAlgebra {
            name: "(Z,+)".into(),
            kind: Kind::IntAdd,
        }
    }

    pub fn int_pair_add() -> Self {
        CarrierAlgebra {
            name: "(ZxZ,+)".into(),
            kind: Kind::IntPairAdd,
        }
    }

    pub fn non_neg_add() -> Self {
        CarrierAlgebra {
            name: "(Z+,+)".into(),
            kind: Kind::NonNegAdd,
        }
    }

    pub fn non_neg_max() -> Self {
        CarrierAlgebra {
            name: "(Z+,max)".into(),
            kind: Kind::NonNegMax,
        }
    }

    pub fn nat_pair_add() -> Self {
        CarrierAlgebra {
            name: "(Z+xZ+,+)".into(),
            kind: Kind::NatPairAdd,
        }
    }

    pub fn mixed_zxn() -> Self {
        CarrierAlgebra {
            name: "(ZxN)+e,mixed".into(),
            kind: Kind::MixedZxN,
        }
    }

    /// `S_k = {0,…,k−1} ∪ (kℕ+1)` with addition modulo k.
    ///
    /// Every product lands in `{0,…,k−1}`; the tail `kℕ+1` consists of
    /// non-products.  The operation has no two-sided identity on the whole
    /// carrier (`0` acts as identity on the block `{0,…,k−1}` only: for
    /// x ∈ kℕ+1, x+0 mod k = 1 ≠ x).
    pub fn sk(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::ParamRange(format!("sk requires k >= 2, got {k}")));
        }
        Ok(CarrierAlgebra {
            name: format!("S_{k}"),
            kind: Kind::Sk(k),
        })
    }

    pub fn finite_table(name: &str, names: &[&str], rows: Vec<Vec<u32>>) -> Result<Self> {
        let table = FiniteTable::new(names.iter().map(|s| Arc::from(*s)).collect(), rows)?;
        Ok(CarrierAlgebra {
            name: name.into(),
            kind: Kind::Table(Arc::new(table)),
        })
    }

    pub fn from_table(name: &str, table: FiniteTable) -> Self {
        CarrierAlgebra {
            name: name.into(),
            kind: Kind::Table(Arc::new(table)),
        }
    }

    /// The symmetric group S₃ with composition (f·g)(i) = f(g(i)).
    /// Element order is lexicographic in one-line notation:
    /// e, (23), (12), (123), (132), (13).
    pub fn symmetric_group3() -> Self {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        const NAMES: [&str; 6] = ["e", "(23)", "(12)", "(123)", "(132)", "(13)"];
        let index_of = |p: &[usize; 3]| PERMS.iter().position(|q| q == p).unwrap() as u32;
        let rows: Vec<Vec<u32>> = PERMS
            .iter()
            .map(|f| {
                PERMS
                    .iter()
                    .map(|g| index_of(&[f[g[0]], f[g[1]], f[g[2]]]))
                    .collect()
            })
            .collect();
        CarrierAlgebra::finite_table("S3", &NAMES, rows).expect("S3 table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier_kind(&self) -> CarrierKind {
        match &self.kind {
            Kind::IntAdd => CarrierKind::Int,
            Kind::IntPairAdd => CarrierKind::IntPair,
            Kind::NonNegAdd | Kind::NonNegMax | Kind::Sk(_) => CarrierKind::NonNegInt,
            Kind::NatPairAdd => CarrierKind::NatPair,
            Kind::MixedZxN => CarrierKind::MixedZxN,
            Kind::Table(t) => CarrierKind::Finite(t.names.clone()),
        }
    }

    pub fn contains(&self, x: &CarrierElement) -> bool {
        match (&self.kind, x) {
            (Kind::IntAdd, CarrierElement::Int(_)) => true,
            (Kind::IntPairAdd, CarrierElement::IntPair(_, _)) => true,
            (Kind::NonNegAdd | Kind::NonNegMax, CarrierElement::Nat(_)) => true,
            (Kind::NatPairAdd, CarrierElement::NatPair(_, _)) => true,
            (Kind::MixedZxN, CarrierElement::IntPair(x, y)) => (*x == 0 && *y == 0) || *y >= 1,
            (Kind::Sk(k), CarrierElement::Nat(n)) => *n < *k || (*n > *k && *n % *k == 1),
            (Kind::Table(t), elem) => t.index_of(elem).is_some(),
            _ => false,
        }
    }

    pub fn op(&self, x: &CarrierElement, y: &CarrierElement) -> Result<CarrierElement> {
        let bad = |e: &CarrierElement| Error::OutsideCarrier(e.clone(), self.name.clone());
        if !self.contains(x) {
            return Err(bad(x));
        }
        if !self.contains(y) {
            return Err(bad(y));
        }
        Ok(match (&self.kind, x, y) {
            (Kind::IntAdd, CarrierElement::Int(a), CarrierElement::Int(b)) => {
                CarrierElement::Int(a + b)
            }
            (
                Kind::IntPairAdd,
                CarrierElement::IntPair(a, b),
                CarrierElement::IntPair(c, d),
            ) => CarrierElement::IntPair(a + c, b + d),
            (Kind::NonNegAdd, CarrierElement::Nat(a), CarrierElement::Nat(b)) => {
                CarrierElement::Nat(a + b)
            }
            (Kind::NonNegMax, CarrierElement::Nat(a), CarrierElement::Nat(b)) => {
                CarrierElement::Nat(*a.max(b))
            }
            (
                Kind::NatPairAdd,
                CarrierElement::NatPair(a, b),
                CarrierElement::NatPair(c, d),
            ) => CarrierElement::NatPair(a + c, b + d),
            (
                Kind::MixedZxN,
                CarrierElement::IntPair(a, b),
                CarrierElement::IntPair(c, d),
            ) => CarrierElement::IntPair(a + c, *b.max(d)),
            (Kind::Sk(k), CarrierElement::Nat(a), CarrierElement::Nat(b)) => {
                CarrierElement::Nat((a + b) % k)
            }
            (Kind::Table(t), _, _) => {
                let i = t.index_of(x).unwrap();
                let j = t.index_of(y).unwrap();
                t.element(t.product[i * t.len() + j] as usize)
            }
            _ => unreachable!("contains() already screened the variants"),
        })
    }

    /// Two-sided identity, when the algebra has one.
    pub fn identity(&self) -> Option<CarrierElement> {
        match &self.kind {
            Kind::IntAdd => Some(CarrierElement::Int(0)),
            Kind::IntPairAdd => Some(CarrierElement::IntPair(0, 0)),
            Kind::NonNegAdd | Kind::NonNegMax => Some(CarrierElement::Nat(0)),
            Kind::NatPairAdd => Some(CarrierElement::NatPair(0, 0)),
            Kind::MixedZxN => Some(CarrierElement::IntPair(0, 0)),
            Kind::Sk(_) => None,
            Kind::Table(t) => t.identity.map(|e| t.element(e as usize)),
        }
    }

    /// Group inverse, when one exists for `x`.
    pub fn inverse(&self, x: &CarrierElement) -> Option<CarrierElement> {
        if !self.contains(x) {
            return None;
        }
        match (&self.kind, x) {
            (Kind::IntAdd, CarrierElement::Int(a)) => Some(CarrierElement::Int(-a)),
            (Kind::IntPairAdd, CarrierElement::IntPair(a, b)) => {
                Some(CarrierElement::IntPair(-a, -b))
            }
            (Kind::NonNegAdd, CarrierElement::Nat(0)) => Some(CarrierElement::Nat(0)),
            (Kind::NatPairAdd, CarrierElement::NatPair(0, 0)) => {
                Some(CarrierElement::NatPair(0, 0))
            }
            (Kind::Table(t), _) => {
                let inv = t.inverse.as_ref()?;
                Some(t.element(inv[t.index_of(x)?] as usize))
            }
            _ => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        match &self.kind {
            Kind::Table(t) => t.commutative,
            _ => true,
        }
    }

    /// Full element list for finite tables; `None` for lazy carriers.
    pub fn elements(&self) -> Option<Vec<CarrierElement>> {
        match &self.kind {
            Kind::Table(t) => Some((0..t.len()).map(|i| t.element(i)).collect()),
            _ => None,
        }
    }

    pub fn table(&self) -> Option<&FiniteTable> {
        match &self.kind {
            Kind::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_idempotent(&self, x: &CarrierElement) -> Result<bool> {
        Ok(self.op(x, x)? == *x)
    }

    /// x^j for j ≥ 1.
    pub fn power(&self, x: &CarrierElement, j: u32) -> Result<CarrierElement> {
        if j == 0 {
            return Err(Error::ParamRange("power requires exponent >= 1".into()));
        }
        let mut acc = x.clone();
        for _ in 1..j {
            acc = self.op(&acc, x)?;
        }
        Ok(acc)
    }
}
