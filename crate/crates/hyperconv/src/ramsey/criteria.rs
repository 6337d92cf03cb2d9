//! Ramsey-type criteria and the fixed-sequence criterion check.

use super::coloring::Coloring;
use super::families::{sfc, SequenceCandidate};
use crate::carrier::CarrierElement;
use crate::error::{Error, Result};
use crate::hypergroup::HypergroupDescriptor;
use crate::measure::FiniteMeasure;
use crate::rational::{rat_to_string, Rat};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Which property the family of δ_F measures is checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Criterion {
    /// Some class carries the full mass of every δ_F.
    Mono,
    /// Some class has mass strictly greater than α for every δ_F; α ∈ [0,1).
    /// α = 0 is the recurrence property (supports always meet the class).
    AlphaMass(Rat),
    /// Mono after discarding every F with max F ≤ the budget index, so the
    /// exceptional subfamily concentrates on small indices and stays finite.
    AlmostMono { max_index_budget: usize },
}

impl Criterion {
    /// AlmostMono with the default budget: discard all F with max index ≤ 2.
    pub fn almost_mono() -> Self {
        Criterion::AlmostMono { max_index_budget: 2 }
    }

    pub fn describe(&self) -> String {
        match self {
            Criterion::Mono => "mono".into(),
            Criterion::AlphaMass(a) => format!("alpha-mass(alpha={})", rat_to_string(a)),
            Criterion::AlmostMono { max_index_budget } => {
                format!("almost-mono(discard max index <= {max_index_budget})")
            }
        }
    }

    pub(super) fn validate(&self) -> Result<()> {
        if let Criterion::AlphaMass(a) = self {
            if a.is_negative() || !(a < &Rat::one()) {
                return Err(Error::PreconditionViolated(format!(
                    "alpha must lie in [0,1), got {}",
                    rat_to_string(a)
                )));
            }
        }
        Ok(())
    }

    /// Is this class mass acceptable for a non-discarded family?
    pub(super) fn accepts(&self, mass: &Rat) -> bool {
        match self {
            Criterion::Mono | Criterion::AlmostMono { .. } => mass.is_one(),
            Criterion::AlphaMass(a) => mass > a,
        }
    }

    /// Does the budget discard a family whose largest index is `max_index`?
    pub(super) fn discards(&self, max_index: usize) -> bool {
        matches!(self, Criterion::AlmostMono { max_index_budget } if max_index <= *max_index_budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some class satisfies the criterion for the whole reported family.
    Witness,
    /// The checked sequence fails the criterion in every class.
    Refuted,
    /// No sequence in the window satisfies the criterion at this depth.
    Exhausted,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Witness => "witness",
            Verdict::Refuted => "refuted",
            Verdict::Exhausted => "exhausted",
        }
    }
}

/// Per-family row of a report: exact mass in every class.
#[derive(Debug, Clone)]
pub struct FamilyRow {
    /// 1-based index set F, increasing.
    pub indices: Vec<usize>,
    pub support: Vec<CarrierElement>,
    /// masses[i−1] = δ_F(C_i).
    pub masses: Vec<Rat>,
    /// Excluded by an AlmostMono budget.
    pub discarded: bool,
}

/// Outcome of one bounded experiment.  Carries everything needed to re-verify
/// the verdict independently: the sequence, every δ_F mass by class, the
/// refuting family per failed class, and the bound that was used.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub structure: String,
    pub coloring: String,
    pub criterion: String,
    pub depth: usize,
    pub window: String,
    pub verdict: Verdict,
    pub witness_class: Option<u64>,
    pub sequence: Vec<CarrierElement>,
    pub rows: Vec<FamilyRow>,
    /// Per class, the first family that fails it; witness classes are absent.
    pub refuting: BTreeMap<u64, Vec<usize>>,
    /// Families checked (fixed sequence) or search nodes visited (search).
    pub cases: usize,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Value {
        json!({
            "structure": self.structure,
            "coloring": self.coloring,
            "criterion": self.criterion,
            "depth": self.depth,
            "window": self.window,
            "verdict": self.verdict.label(),
            "witness_class": self.witness_class,
            "sequence": self.sequence.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|row| json!({
                "F": row.indices,
                "support": row.support.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                "masses": row.masses.iter().map(rat_to_string).collect::<Vec<_>>(),
                "discarded": row.discarded,
            })).collect::<Vec<_>>(),
            "refuting": self.refuting.iter().map(|(class, f)| json!({
                "class": class,
                "F": f,
            })).collect::<Vec<_>>(),
            "cases": self.cases,
        })
    }
}

/// δ_F mass per class, indexed by class − 1.
pub(super) fn class_masses(mu: &FiniteMeasure, coloring: &Coloring) -> Result<Vec<Rat>> {
    let r = coloring.arity() as usize;
    let mut masses = vec![Rat::zero(); r];
    for (x, w) in mu.iter() {
        let class = coloring.classify(x)?;
        masses[(class - 1) as usize] += w;
    }
    Ok(masses)
}

/// Rows for every family of `xs` plus, per class, the first refuting family
/// (`None` = the class survives all non-discarded rows).
pub(super) fn evaluate_rows(
    k: &HypergroupDescriptor,
    xs: &SequenceCandidate,
    coloring: &Coloring,
    depth: usize,
    criterion: &Criterion,
) -> Result<(Vec<FamilyRow>, Vec<Option<Vec<usize>>>)> {
    let r = coloring.arity() as usize;
    let entries = sfc(k, xs, depth)?;
    let mut refuting: Vec<Option<Vec<usize>>> = vec![None; r];
    let mut rows = Vec::with_capacity(entries.len());
    for entry in entries {
        let masses = class_masses(&entry.measure, coloring)?;
        let discarded = criterion.discards(entry.max_index());
        if !discarded {
            for (i, slot) in refuting.iter_mut().enumerate() {
                if slot.is_none() && !criterion.accepts(&masses[i]) {
                    *slot = Some(entry.indices.clone());
                }
            }
        }
        rows.push(FamilyRow {
            support: entry.measure.support().cloned().collect(),
            indices: entry.indices,
            masses,
            discarded,
        });
    }
    Ok((rows, refuting))
}

/// Checks one fixed sequence against the criterion under the coloring.  The
/// witness class, when any, is the smallest class index that works.
pub fn check_criterion(
    k: &HypergroupDescriptor,
    xs: &SequenceCandidate,
    coloring: &Coloring,
    depth: usize,
    criterion: &Criterion,
) -> Result<ExperimentReport> {
    criterion.validate()?;
    let (rows, refuting) = evaluate_rows(k, xs, coloring, depth, criterion)?;
    let witness_class = refuting
        .iter()
        .position(|slot| slot.is_none())
        .map(|i| (i + 1) as u64);
    let cases = rows.len();
    Ok(ExperimentReport {
        structure: k.name().into(),
        coloring: coloring.describe(),
        criterion: criterion.describe(),
        depth,
        window: format!("sequence of {} terms", xs.len()),
        verdict: if witness_class.is_some() {
            Verdict::Witness
        } else {
            Verdict::Refuted
        },
        witness_class,
        sequence: xs.terms().to_vec(),
        rows,
        refuting: refuting
            .into_iter()
            .enumerate()
            .filter_map(|(i, f)| f.map(|f| ((i + 1) as u64, f)))
            .collect(),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cp1, cp2, max_deformation, DeformationWeights};
    use crate::hypergroup::FnRule;
    use crate::rational::rat;
    use std::sync::Arc;

    fn nats(v: &[u64]) -> Vec<CarrierElement> {
        v.iter().copied().map(CarrierElement::Nat).collect()
    }

    fn candidate(k: &HypergroupDescriptor, v: &[u64]) -> SequenceCandidate {
        SequenceCandidate::for_descriptor(nats(v), k).unwrap()
    }

    /// δ_x*δ_y = δ_{x+y}: a point-mass-valued rule (plain semigroup).
    fn additive_descriptor() -> HypergroupDescriptor {
        let rule = FnRule(|x: &CarrierElement, y: &CarrierElement| {
            Ok(FiniteMeasure::point_mass(CarrierElement::Nat(
                x.as_nat().unwrap() + y.as_nat().unwrap(),
            )))
        });
        HypergroupDescriptor::new(
            "(Z+,+)",
            crate::carrier::CarrierKind::NonNegInt,
            CarrierElement::Nat(0),
            Arc::new(rule),
        )
        .hermitian()
    }

    #[test]
    fn powers_of_three_are_mono_in_cp1() {
        // 3ℤ₊ is convolution-closed in CP1, so the family stays in class 1.
        let k = cp1();
        let xs = candidate(&k, &[3, 9, 27]);
        let coloring = Coloring::mod_k(3).unwrap();
        let report = check_criterion(&k, &xs, &coloring, 3, &Criterion::Mono).unwrap();
        assert_eq!(report.verdict, Verdict::Witness);
        assert_eq!(report.witness_class, Some(1));
        assert_eq!(report.rows.len(), 7);
        assert!(report.rows.iter().all(|r| r.masses[0].is_one()));
        assert!(report.refuting.contains_key(&2));
        assert!(report.refuting.contains_key(&3));
    }

    #[test]
    fn cp2_pair_is_refuted_mod_3() {
        let k = cp2();
        let xs = candidate(&k, &[1, 2]);
        let coloring = Coloring::mod_k(3).unwrap();
        let report = check_criterion(&k, &xs, &coloring, 2, &Criterion::Mono).unwrap();
        assert_eq!(report.verdict, Verdict::Refuted);
        assert_eq!(report.witness_class, None);
        // δ_1*δ_2 = ⅓δ_1 + ⅔δ_3 splits classes 1 and 2.
        assert_eq!(report.rows[2].masses, vec![rat(2, 3), rat(1, 3), rat(0, 1)]);
        assert_eq!(report.refuting.len(), 3);
        assert_eq!(report.refuting[&1], vec![1]);
        assert_eq!(report.refuting[&2], vec![2]);
        assert_eq!(report.refuting[&3], vec![1]);
    }

    #[test]
    fn max_deformation_sequence_inside_one_class_is_mono() {
        // Off-diagonal products are point masses at the max, so a sequence of
        // odd labels never leaves the odd class.
        let k = max_deformation(DeformationWeights::powers_of_two(), 40).unwrap();
        let xs = candidate(&k, &[3, 5, 7, 9]);
        let coloring = Coloring::mod_k(2).unwrap();
        let report = check_criterion(&k, &xs, &coloring, 4, &Criterion::Mono).unwrap();
        assert_eq!(report.verdict, Verdict::Witness);
        assert_eq!(report.witness_class, Some(2));
        assert_eq!(report.rows.len(), 15);
    }

    #[test]
    fn one_class_coloring_is_trivially_mono() {
        let k = cp2();
        let xs = candidate(&k, &[1, 2, 5]);
        let coloring = Coloring::mod_k(1).unwrap();
        let report = check_criterion(&k, &xs, &coloring, 3, &Criterion::Mono).unwrap();
        assert_eq!(report.verdict, Verdict::Witness);
        assert_eq!(report.witness_class, Some(1));
    }

    #[test]
    fn mono_witness_is_alpha_witness_and_alpha_is_monotone() {
        let k = cp1();
        let xs = candidate(&k, &[3, 9, 27]);
        let coloring = Coloring::mod_k(3).unwrap();
        let mono = check_criterion(&k, &xs, &coloring, 3, &Criterion::Mono).unwrap();
        assert_eq!(mono.verdict, Verdict::Witness);
        for alpha in [rat(0, 1), rat(1, 3), rat(2, 3), rat(99, 100)] {
            let a = check_criterion(&k, &xs, &coloring, 3, &Criterion::AlphaMass(alpha)).unwrap();
            assert_eq!(a.verdict, Verdict::Witness);
            assert_eq!(a.witness_class, mono.witness_class);
        }
        // AlphaMass(β) witness stays a witness for every α < β: cp2 pair has
        // mass ⅔ in class 1, so β = ½ works and so does every smaller α.
        let k2 = cp2();
        let pair = candidate(&k2, &[1, 2]);
        for (alpha, expect) in [
            (rat(1, 2), Verdict::Refuted), // class 1 fails on F={1}: δ_1 has mass 0
            (rat(0, 1), Verdict::Refuted),
        ] {
            let r =
                check_criterion(&k2, &pair, &coloring, 2, &Criterion::AlphaMass(alpha)).unwrap();
            assert_eq!(r.verdict, expect);
        }
    }

    #[test]
    fn point_mass_rules_make_mono_and_alpha_agree() {
        // Masses are 0 or 1 for a semigroup, so every α ∈ [0,1) gives the
        // same verdict as Mono.
        let k = additive_descriptor();
        let coloring = Coloring::mod_k(2).unwrap();
        let alphas = [rat(0, 1), rat(1, 2), rat(9, 10)];
        for (terms, expect) in [
            (vec![2u64, 4, 6], Verdict::Witness),
            (vec![1, 2], Verdict::Refuted),
        ] {
            let xs = candidate(&k, &terms);
            let mono = check_criterion(&k, &xs, &coloring, 3, &Criterion::Mono).unwrap();
            assert_eq!(mono.verdict, expect);
            for alpha in &alphas {
                let a = check_criterion(
                    &k,
                    &xs,
                    &coloring,
                    3,
                    &Criterion::AlphaMass(alpha.clone()),
                )
                .unwrap();
                assert_eq!(a.verdict, mono.verdict);
                assert_eq!(a.witness_class, mono.witness_class);
            }
        }
    }

    #[test]
    fn almost_mono_discards_small_max_indices() {
        let k = cp2();
        let coloring = Coloring::mod_k(3).unwrap();
        // Depth 2 on two terms: every family has max index ≤ 2, so the
        // default budget discards everything and the check passes vacuously.
        let pair = candidate(&k, &[1, 2]);
        let vac = check_criterion(&k, &pair, &coloring, 2, &Criterion::almost_mono()).unwrap();
        assert_eq!(vac.verdict, Verdict::Witness);
        assert!(vac.rows.iter().all(|r| r.discarded));
        // A third term brings max-index-3 families back into scope; CP2
        // splits them across classes, so the verdict flips.
        let triple = candidate(&k, &[1, 2, 5]);
        let real = check_criterion(&k, &triple, &coloring, 2, &Criterion::almost_mono()).unwrap();
        assert_eq!(real.verdict, Verdict::Refuted);
        assert!(real.refuting.values().all(|f| f.contains(&3)));
        let discarded: Vec<_> = real.rows.iter().filter(|r| r.discarded).collect();
        assert_eq!(discarded.len(), 3); // {1}, {2}, {1,2}
    }

    #[test]
    fn alpha_outside_unit_interval_is_rejected() {
        let k = cp1();
        let xs = candidate(&k, &[1]);
        let coloring = Coloring::mod_k(2).unwrap();
        for alpha in [rat(1, 1), rat(-1, 2), rat(3, 2)] {
            let err = check_criterion(&k, &xs, &coloring, 1, &Criterion::AlphaMass(alpha))
                .unwrap_err();
            assert!(matches!(err, Error::PreconditionViolated(_)));
        }
    }

    #[test]
    fn report_json_lists_exact_masses() {
        let k = cp2();
        let xs = candidate(&k, &[1, 2]);
        let coloring = Coloring::mod_k(3).unwrap();
        let report = check_criterion(&k, &xs, &coloring, 2, &Criterion::Mono).unwrap();
        let v = report.to_json();
        assert_eq!(v["verdict"], json!("refuted"));
        assert_eq!(v["rows"][2]["masses"], json!(["2/3", "1/3", "0"]));
        assert_eq!(v["rows"][2]["F"], json!([1, 2]));
        assert_eq!(v["cases"], json!(3));
    }
}
