//! Bounded witness search over injective sequences from a window.

use super::coloring::Coloring;
use super::criteria::{check_criterion, class_masses, Criterion, ExperimentReport, Verdict};
use super::families::SequenceCandidate;
use crate::axioms::Window;
use crate::carrier::CarrierElement;
use crate::error::{Error, Result};
use crate::hypergroup::HypergroupDescriptor;
use crate::measure::FiniteMeasure;
use std::collections::{BTreeMap, BTreeSet};

/// Worker budget: HYPERCONV_THREADS when set, else available parallelism.
pub(crate) fn thread_budget() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("HYPERCONV_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n >= 1 => n,
        _ => available,
    }
}

struct SearchCtx<'a> {
    k: &'a HypergroupDescriptor,
    coloring: &'a Coloring,
    criterion: &'a Criterion,
    depth: usize,
}

/// (nodes visited, witness found) for one first-element subtree.
type SubtreeOutcome = (usize, Option<Vec<CarrierElement>>);

impl SearchCtx<'_> {
    /// Convolves δ_x onto δ_G for every G ⊆ prefix (G = ∅ included), checks
    /// the new families against the still-viable classes, and either prunes
    /// (returns `None`, leaving `measures` untouched) or returns the inserted
    /// masks and the surviving classes.
    fn extend(
        &self,
        prefix_len: usize,
        measures: &mut BTreeMap<u64, FiniteMeasure>,
        viable: &BTreeSet<u64>,
        x: &CarrierElement,
    ) -> Result<Option<(Vec<u64>, BTreeSet<u64>)>> {
        let bit = 1u64 << prefix_len;
        let point = FiniteMeasure::point_mass(x.clone());
        let mut v2 = viable.clone();
        let mut inserted = Vec::with_capacity(1 << prefix_len);
        // Every new family contains the new index, so its max is prefix_len+1.
        let constrained = !self.criterion.discards(prefix_len + 1);
        for old in 0..(1u64 << prefix_len) {
            let mu = if old == 0 {
                point.clone()
            } else {
                self.k.convolve_m(&measures[&old], &point)?
            };
            if constrained {
                let masses = class_masses(&mu, self.coloring)?;
                v2.retain(|&class| self.criterion.accepts(&masses[(class - 1) as usize]));
                if v2.is_empty() {
                    for mask in &inserted {
                        measures.remove(mask);
                    }
                    return Ok(None);
                }
            }
            inserted.push(old | bit);
            measures.insert(old | bit, mu);
        }
        Ok(Some((inserted, v2)))
    }

    /// DFS below the current prefix in window order.  Returns the first
    /// sequence of length `depth` whose viable-class set is non-empty.
    fn dfs(
        &self,
        window: &[CarrierElement],
        prefix: &mut Vec<CarrierElement>,
        measures: &mut BTreeMap<u64, FiniteMeasure>,
        viable: &BTreeSet<u64>,
        nodes: &mut usize,
    ) -> Result<Option<Vec<CarrierElement>>> {
        if prefix.len() == self.depth {
            return Ok(Some(prefix.clone()));
        }
        for x in window {
            if x == self.k.identity() || prefix.contains(x) {
                continue;
            }
            *nodes += 1;
            if let Some((masks, v2)) = self.extend(prefix.len(), measures, viable, x)? {
                prefix.push(x.clone());
                let found = self.dfs(window, prefix, measures, &v2, nodes)?;
                prefix.pop();
                for mask in masks {
                    measures.remove(&mask);
                }
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// Explores the subtree rooted at `first`.
    fn subtree(
        &self,
        window: &[CarrierElement],
        first: &CarrierElement,
        viable: &BTreeSet<u64>,
    ) -> Result<SubtreeOutcome> {
        let mut nodes = 1;
        let mut measures = BTreeMap::new();
        match self.extend(0, &mut measures, viable, first)? {
            None => Ok((nodes, None)),
            Some((_, v2)) => {
                let mut prefix = vec![first.clone()];
                let found = self.dfs(window, &mut prefix, &mut measures, &v2, &mut nodes)?;
                Ok((nodes, found))
            }
        }
    }
}

/// Lexicographic prefix-pruned DFS over injective sequences drawn from the
/// window (identity excluded), target length = depth: the first sequence
/// whose every family of size ≤ depth satisfies the criterion in some common
/// class wins.  Subtrees fan out over worker threads when the budget allows;
/// the merge is by window order, so the report is identical at any budget.
pub fn search_sequence(
    k: &HypergroupDescriptor,
    coloring: &Coloring,
    depth: usize,
    window: &Window,
    criterion: &Criterion,
) -> Result<ExperimentReport> {
    criterion.validate()?;
    if depth == 0 || depth > 20 {
        return Err(Error::ParamRange(format!(
            "search depth must be in 1..=20, got {depth}"
        )));
    }
    let ctx = SearchCtx {
        k,
        coloring,
        criterion,
        depth,
    };
    let viable: BTreeSet<u64> = (1..=coloring.arity()).collect();
    let elements = window.elements();
    let starts: Vec<&CarrierElement> = elements.iter().filter(|x| *x != k.identity()).collect();
    let outcomes = run_subtrees(&ctx, elements, &starts, &viable, thread_budget())?;

    let mut nodes = 0;
    let mut witness = None;
    for (n, w) in outcomes {
        nodes += n;
        if w.is_some() {
            witness = w;
            break;
        }
    }
    match witness {
        Some(seq) => {
            let xs = SequenceCandidate::new(seq, Some(k.identity()))?;
            let mut report = check_criterion(k, &xs, coloring, depth, criterion)?;
            debug_assert_eq!(report.verdict, Verdict::Witness);
            report.window = window.describe();
            report.cases = nodes;
            Ok(report)
        }
        None => Ok(ExperimentReport {
            structure: k.name().into(),
            coloring: coloring.describe(),
            criterion: criterion.describe(),
            depth,
            window: window.describe(),
            verdict: Verdict::Exhausted,
            witness_class: None,
            sequence: Vec::new(),
            rows: Vec::new(),
            refuting: BTreeMap::new(),
            cases: nodes,
        }),
    }
}

/// Runs one subtree per start element.  Serial mode stops at the first
/// witness; parallel mode splits the starts into contiguous chunks and merges
/// in start order, so both modes report identical counts: subtrees before the
/// winner are witness-free and get fully explored either way.
fn run_subtrees(
    ctx: &SearchCtx<'_>,
    window: &[CarrierElement],
    starts: &[&CarrierElement],
    viable: &BTreeSet<u64>,
    budget: usize,
) -> Result<Vec<SubtreeOutcome>> {
    let workers = budget.clamp(1, starts.len().max(1));
    if workers <= 1 {
        let mut out = Vec::with_capacity(starts.len());
        for &first in starts {
            let outcome = ctx.subtree(window, first, viable)?;
            let found = outcome.1.is_some();
            out.push(outcome);
            if found {
                break;
            }
        }
        return Ok(out);
    }
    let chunk = starts.len().div_ceil(workers);
    let results: Vec<Result<Vec<SubtreeOutcome>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut out = Vec::with_capacity(part.len());
                    for &first in part {
                        let outcome = ctx.subtree(window, first, viable)?;
                        let found = outcome.1.is_some();
                        out.push(outcome);
                        if found {
                            break;
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut merged = Vec::with_capacity(starts.len());
    for part in results {
        merged.extend(part?);
    }
    Ok(merged)
}
