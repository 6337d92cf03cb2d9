//! Exact reproducers for the CP2 obstruction computations: the pairwise
//! mod-3 support split and the α-mass closed form with its bound.

use super::coloring::Coloring;
use super::criteria::{class_masses, ExperimentReport, FamilyRow, Verdict};
use super::search::thread_budget;
use crate::carrier::CarrierElement;
use crate::constructions::cp2;
use crate::error::{Error, Result};
use crate::rational::{rat_to_string, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Checks that spt(δ_n*δ_m) meets at least two mod-3 classes for every pair
/// 1 ≤ m < n ≤ window_max.  The support runs in steps of 2 while a mod-3
/// class runs in steps of 3, so no pair should be monochromatic — which
/// refutes Mono for CP2 at depth 2 on this window.  Any violating pair would
/// be a witness and is reported with its masses.
pub fn verify_cp2_mod3(window_max: u64) -> Result<ExperimentReport> {
    if window_max < 2 {
        return Err(Error::PreconditionViolated(format!(
            "window_max >= 2 fails: got {window_max}"
        )));
    }
    let coloring = Coloring::mod_k(3)?;
    let k = cp2();
    let band = |range: std::ops::RangeInclusive<u64>| -> Result<Vec<FamilyRow>> {
        let mut violations = Vec::new();
        for n in range {
            for m in 1..n {
                // Each pair is touched exactly once; skip the memo cache.
                let mu = k.convolve_uncached(&CarrierElement::Nat(n), &CarrierElement::Nat(m))?;
                let masses = class_masses(&mu, &coloring)?;
                if masses.iter().filter(|w| !w.is_zero()).count() < 2 {
                    violations.push(FamilyRow {
                        indices: vec![m as usize, n as usize],
                        support: mu.support().cloned().collect(),
                        masses,
                        discarded: false,
                    });
                }
            }
        }
        Ok(violations)
    };

    let workers = thread_budget().clamp(1, 8);
    let violations: Vec<FamilyRow> = if workers <= 1 || window_max < 64 {
        band(2..=window_max)?
    } else {
        // Contiguous n-bands merged in order keep the report deterministic.
        let step = (window_max - 1).div_ceil(workers as u64);
        let bands: Vec<(u64, u64)> = (0..workers as u64)
            .map(|i| (2 + i * step, (2 + (i + 1) * step - 1).min(window_max)))
            .filter(|(lo, hi)| lo <= hi)
            .collect();
        let results: Vec<Result<Vec<FamilyRow>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = bands
                .iter()
                .map(|&(lo, hi)| {
                    let band = &band;
                    scope.spawn(move || band(lo..=hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("cp2 sweep worker panicked"))
                .collect()
        });
        let mut merged = Vec::new();
        for part in results {
            merged.extend(part?);
        }
        merged
    };

    let pairs = (window_max * (window_max - 1) / 2) as usize;
    // A monochromatic pair would witness depth-2 Mono; none is expected, in
    // which case the sweep refutes it for every pair in the window.
    let witness = violations.first().map(|row| {
        let class = row
            .masses
            .iter()
            .position(|w| !w.is_zero())
            .expect("violating pair has mass somewhere")
            + 1;
        (
            class as u64,
            vec![
                CarrierElement::Nat(row.indices[0] as u64),
                CarrierElement::Nat(row.indices[1] as u64),
            ],
        )
    });
    Ok(ExperimentReport {
        structure: k.name().into(),
        coloring: coloring.describe(),
        criterion: "pairwise mono: spt(delta_n*delta_m) inside one class".into(),
        depth: 2,
        window: format!("{{1,…,{window_max}}}"),
        verdict: if witness.is_some() {
            Verdict::Witness
        } else {
            Verdict::Refuted
        },
        witness_class: witness.as_ref().map(|(class, _)| *class),
        sequence: witness.map(|(_, seq)| seq).unwrap_or_default(),
        rows: violations,
        refuting: BTreeMap::new(),
        cases: pairs,
    })
}

/// Exact values for one α-mass counterexample instance.
#[derive(Debug, Clone)]
pub struct Cp2AlphaReport {
    pub k: u32,
    pub i: u64,
    pub m: u64,
    pub n: u64,
    /// l₀ = (m−i+1)/4ᵏ, l₁ = (n−i+1)/4ᵏ.
    pub l0: u64,
    pub l1: u64,
    /// Brute-force δ_n*δ_m(C_i) over the CP2 support.
    pub lhs: Rat,
    /// (2l₀+1)/(m+1).
    pub closed_form: Rat,
    /// The equivalent form (2(m−i+1)+4ᵏ)/(4ᵏ(m+1)).
    pub remark_form: Rat,
    /// (2l₀+1)(l₀+l₁+2)/(l₀·l₁·4ᵏ).
    pub bound: Rat,
    /// lhs = closed_form = remark_form.
    pub matches: bool,
    /// lhs < bound.
    pub holds: bool,
}

impl Cp2AlphaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "i": self.i,
            "m": self.m,
            "n": self.n,
            "l0": self.l0,
            "l1": self.l1,
            "lhs": rat_to_string(&self.lhs),
            "closed_form": rat_to_string(&self.closed_form),
            "remark_form": rat_to_string(&self.remark_form),
            "bound": rat_to_string(&self.bound),
            "match": self.matches,
            "holds": self.holds,
        })
    }
}

/// Brute-forces δ_n*δ_m(C_i) for C_i = {x ≡ i−1 (mod 4ᵏ)} and compares it
/// with the closed form (2l₀+1)/(m+1) and the strict upper bound
/// (2l₀+1)(l₀+l₁+2)/(l₀l₁4ᵏ).
pub fn verify_cp2_alpha(k: u32, i: u64, m: u64, n: u64) -> Result<Cp2AlphaReport> {
    let fail = |msg: String| Err(Error::PreconditionViolated(msg));
    if k < 2 {
        return fail(format!("k >= 2 fails: k = {k}"));
    }
    if k > 10 {
        return Err(Error::ParamRange(format!("k <= 10 required, got {k}")));
    }
    let p = 4u64.pow(k);
    if i < 1 || (i - 1) % 2 != 0 {
        return fail(format!("i - 1 even fails: i = {i}"));
    }
    if i > p {
        return fail(format!("i <= 4^k fails: i = {i}, 4^k = {p}"));
    }
    if m % p != (i - 1) % p {
        return fail(format!("m = i - 1 (mod 4^k) fails: m = {m}, i - 1 = {}", i - 1));
    }
    if n % p != (i - 1) % p {
        return fail(format!("n = i - 1 (mod 4^k) fails: n = {n}, i - 1 = {}", i - 1));
    }
    if p >= m {
        return fail(format!("4^k < m fails: {p} >= {m}"));
    }
    if n <= 3 * m {
        return fail(format!("2m < n - m fails: m = {m}, n = {n}"));
    }
    let l0 = (m - (i - 1)) / p;
    let l1 = (n - (i - 1)) / p;
    let target = (i - 1) % p;
    let mu = cp2().convolve_uncached(&CarrierElement::Nat(n), &CarrierElement::Nat(m))?;
    let lhs = mu.mass_where(|x| x.as_nat().is_some_and(|v| v % p == target));
    let big = BigInt::from;
    let closed_form = Rat::new(big(2 * l0 + 1), big(m + 1));
    let remark_form = Rat::new(big(2 * (m - i + 1)) + big(p), big(p) * big(m + 1));
    let bound = Rat::new(big(2 * l0 + 1) * big(l0 + l1 + 2), big(l0) * big(l1) * big(p));
    let matches = lhs == closed_form && lhs == remark_form;
    let holds = lhs < bound;
    Ok(Cp2AlphaReport {
        k,
        i,
        m,
        n,
        l0,
        l1,
        lhs,
        closed_form,
        remark_form,
        bound,
        matches,
        holds,
    })
}

/// Deterministic stream of precondition-satisfying (k, i, m, n) tuples, the
/// canonical (2, 1, 32, 112) first.
pub fn cp2_alpha_instances(limit: usize) -> Vec<(u32, u64, u64, u64)> {
    let canonical = (2u32, 1u64, 32u64, 112u64);
    let mut out = Vec::with_capacity(limit);
    if limit == 0 {
        return out;
    }
    out.push(canonical);
    'fill: for k in 2..=3u32 {
        let p = 4u64.pow(k);
        for l0 in 1..=4u64 {
            for i in (1..=5u64).step_by(2) {
                let m = i - 1 + l0 * p;
                if m <= p {
                    continue;
                }
                // Two smallest n in the residue class with n > 3m.
                let l1_min = (3 * m - (i - 1)) / p + 1;
                for l1 in l1_min..l1_min + 2 {
                    let tuple = (k, i, m, i - 1 + l1 * p);
                    if tuple == canonical {
                        continue;
                    }
                    out.push(tuple);
                    if out.len() == limit {
                        break 'fill;
                    }
                }
            }
        }
    }
    out
}
