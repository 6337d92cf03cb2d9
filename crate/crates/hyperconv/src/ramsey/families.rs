//! Injective sequence candidates and their FS/FP and FC/SFC families.

use crate::algebra::CarrierAlgebra;
use crate::carrier::CarrierElement;
use crate::error::{Error, Result};
use crate::hypergroup::HypergroupDescriptor;
use crate::measure::FiniteMeasure;
use std::collections::{BTreeSet, HashMap};

/// Finite injective sequence of carrier points with the identity excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCandidate {
    terms: Vec<CarrierElement>,
}

impl SequenceCandidate {
    /// Requires at least one term, pairwise-distinct terms, and — when an
    /// identity is supplied — that none of the terms equals it.
    pub fn new(terms: Vec<CarrierElement>, identity: Option<&CarrierElement>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput(
                "sequence candidate needs at least one term".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for t in &terms {
            if Some(t) == identity {
                return Err(Error::ContainsIdentity(t.clone()));
            }
            if !seen.insert(t.clone()) {
                return Err(Error::NotInjective(t.clone()));
            }
        }
        Ok(SequenceCandidate { terms })
    }

    /// Validates against the descriptor's identity.
    pub fn for_descriptor(terms: Vec<CarrierElement>, k: &HypergroupDescriptor) -> Result<Self> {
        SequenceCandidate::new(terms, Some(k.identity()))
    }

    pub fn terms(&self) -> &[CarrierElement] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// FS/FP set: all products Π_{j∈F} x_j over non-empty index subsets F with
/// |F| ≤ depth, factors composed in increasing index order.
pub fn fs_fp_set(
    s: &CarrierAlgebra,
    xs: &SequenceCandidate,
    depth: usize,
) -> Result<BTreeSet<CarrierElement>> {
    fn extend(
        s: &CarrierAlgebra,
        terms: &[CarrierElement],
        from: usize,
        acc: &CarrierElement,
        left: usize,
        out: &mut BTreeSet<CarrierElement>,
    ) -> Result<()> {
        for j in from..terms.len() {
            let prod = s.op(acc, &terms[j])?;
            out.insert(prod.clone());
            if left > 1 {
                extend(s, terms, j + 1, &prod, left - 1, out)?;
            }
        }
        Ok(())
    }

    let depth = depth.min(xs.len());
    let terms = xs.terms();
    let mut out = BTreeSet::new();
    if depth == 0 {
        return Ok(out);
    }
    for j in 0..terms.len() {
        out.insert(terms[j].clone());
        if depth > 1 {
            extend(s, terms, j + 1, &terms[j], depth - 1, &mut out)?;
        }
    }
    Ok(out)
}

/// One member of FC/SFC: the index set F (1-based, increasing) and δ_F.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    pub indices: Vec<usize>,
    pub measure: FiniteMeasure,
}

impl FamilyEntry {
    pub fn support(&self) -> BTreeSet<CarrierElement> {
        self.measure.support_set()
    }

    /// `{1,3}` — the family label used in report rows.
    pub fn label(&self) -> String {
        format!(
            "{{{}}}",
            self.indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    pub fn max_index(&self) -> usize {
        *self.indices.last().expect("family index sets are non-empty")
    }
}

/// FC/SFC up to `depth`: δ_F for every non-empty F ⊆ {1..|xs|} with |F| ≤
/// depth, ordered by (|F|, lexicographic F).  Each δ_F is convolved once from
/// its parent δ_{F∖{max F}}.
pub fn sfc(
    k: &HypergroupDescriptor,
    xs: &SequenceCandidate,
    depth: usize,
) -> Result<Vec<FamilyEntry>> {
    let n = xs.len();
    if n > 63 {
        return Err(Error::InvalidInput(format!(
            "sfc supports at most 63 terms, got {n}"
        )));
    }
    let depth = depth.min(n);
    let terms = xs.terms();
    let mut memo: HashMap<u64, FiniteMeasure> = HashMap::new();
    let mut out = Vec::new();
    for size in 1..=depth {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let last = *combo.last().expect("size >= 1");
            let mask = combo.iter().fold(0u64, |m, &j| m | (1 << j));
            let point = FiniteMeasure::point_mass(terms[last].clone());
            let mu = if size == 1 {
                point
            } else {
                let parent = &memo[&(mask & !(1u64 << last))];
                k.convolve_m(parent, &point)?
            };
            memo.insert(mask, mu.clone());
            out.push(FamilyEntry {
                indices: combo.iter().map(|j| j + 1).collect(),
                measure: mu,
            });
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok(out)
}

/// Advances to the next k-combination of {0..n−1} in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cp1, cp2};
    use crate::rational::rat;

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    fn nats(v: &[u64]) -> Vec<CarrierElement> {
        v.iter().copied().map(CarrierElement::Nat).collect()
    }

    #[test]
    fn candidate_rejects_duplicates_identity_and_empty() {
        assert!(matches!(
            SequenceCandidate::new(nats(&[1, 2, 1]), None),
            Err(Error::NotInjective(_))
        ));
        assert!(matches!(
            SequenceCandidate::new(nats(&[1, 0]), Some(&nat(0))),
            Err(Error::ContainsIdentity(_))
        ));
        assert!(SequenceCandidate::new(vec![], None).is_err());
        let k = cp1();
        assert!(SequenceCandidate::for_descriptor(nats(&[0, 1]), &k).is_err());
        assert!(SequenceCandidate::for_descriptor(nats(&[1, 2]), &k).is_ok());
    }

    #[test]
    fn fs_set_of_binary_sums() {
        let xs = SequenceCandidate::new(nats(&[1, 2, 4]), Some(&nat(0))).unwrap();
        let fs = fs_fp_set(&CarrierAlgebra::non_neg_add(), &xs, 3).unwrap();
        assert_eq!(fs, (1..=7).map(CarrierElement::Nat).collect());
        // Depth 2 drops only the full sum 7.
        let fs2 = fs_fp_set(&CarrierAlgebra::non_neg_add(), &xs, 2).unwrap();
        assert_eq!(fs2, (1..=6).map(CarrierElement::Nat).collect());
    }

    #[test]
    fn max_semigroup_fs_set_is_the_sequence() {
        let xs = SequenceCandidate::new(nats(&[3, 5, 9]), Some(&nat(0))).unwrap();
        let fs = fs_fp_set(&CarrierAlgebra::non_neg_max(), &xs, 3).unwrap();
        assert_eq!(fs, BTreeSet::from([nat(3), nat(5), nat(9)]));
    }

    #[test]
    fn fp_set_respects_increasing_index_order() {
        // (12)·(13) applies (13) first, giving the 3-cycle (132); the opposite
        // order would give (123), which must not appear.
        let s3 = CarrierAlgebra::symmetric_group3();
        let a = CarrierElement::sym(2, "(12)");
        let b = CarrierElement::sym(5, "(13)");
        let xs = SequenceCandidate::new(vec![a.clone(), b.clone()], s3.identity().as_ref()).unwrap();
        let fp = fs_fp_set(&s3, &xs, 2).unwrap();
        assert_eq!(
            fp,
            BTreeSet::from([a, b, CarrierElement::sym(4, "(132)")])
        );
    }

    #[test]
    fn sfc_orders_families_by_size_then_lex() {
        let k = cp1();
        let xs = SequenceCandidate::for_descriptor(nats(&[1, 2]), &k).unwrap();
        let fam = sfc(&k, &xs, 2).unwrap();
        let labels: Vec<String> = fam.iter().map(|f| f.label()).collect();
        assert_eq!(labels, ["{1}", "{2}", "{1,2}"]);
        assert_eq!(fam[0].measure, FiniteMeasure::point_mass(nat(1)));
        assert_eq!(fam[1].measure, FiniteMeasure::point_mass(nat(2)));
        assert_eq!(
            fam[2].measure,
            FiniteMeasure::from_weights([(nat(1), rat(1, 2)), (nat(3), rat(1, 2))]).unwrap()
        );
        assert_eq!(fam[2].support(), BTreeSet::from([nat(1), nat(3)]));
        assert_eq!(fam[2].max_index(), 2);
    }

    #[test]
    fn sfc_cp2_pair() {
        let k = cp2();
        let xs = SequenceCandidate::for_descriptor(nats(&[1, 2]), &k).unwrap();
        let fam = sfc(&k, &xs, 2).unwrap();
        assert_eq!(
            fam[2].measure,
            FiniteMeasure::from_weights([(nat(1), rat(1, 3)), (nat(3), rat(2, 3))]).unwrap()
        );
    }

    #[test]
    fn sfc_depth_clamps_and_counts() {
        let k = cp1();
        let xs = SequenceCandidate::for_descriptor(nats(&[1, 2, 3]), &k).unwrap();
        assert_eq!(sfc(&k, &xs, 9).unwrap().len(), 7);
        assert_eq!(sfc(&k, &xs, 1).unwrap().len(), 3);
        assert_eq!(sfc(&k, &xs, 0).unwrap().len(), 0);
        // δ_F folds in increasing index order: {1,2,3} via {1,2}.
        let fam = sfc(&k, &xs, 3).unwrap();
        let full = fam.last().unwrap();
        assert_eq!(full.indices, vec![1, 2, 3]);
        assert_eq!(full.measure, k.convolve_sequence(&nats(&[1, 2, 3])).unwrap());
    }
}
