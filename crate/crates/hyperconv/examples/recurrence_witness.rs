//! Recurrence of finite-subset convolutions in polynomial hypergroups.
//!
//! For cp1/cp2-style structures, the sum point s_F = Σ_{i∈F} x_i always
//! carries positive mass in δ_F — an exact, checkable analogue of "sums are
//! recurrent".  `recurrent_witness` evaluates every nonempty F up to the
//! depth and reports the mass at s_F.  Closure under convolution supports is
//! a separate question, answered by `subalgebra_closure`.

use hyperconv::axioms::Window;
use hyperconv::constructions::{cp1, cp2};
use hyperconv::ramsey::{recurrent_witness, sk_semigroup, subalgebra_closure, ClosureOutcome, SequenceCandidate};
use hyperconv::CarrierElement::Nat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn main() {
    let k1 = cp1();
    let xs = SequenceCandidate::for_descriptor(vec![Nat(2), Nat(5), Nat(9)], &k1).unwrap();
    let report = recurrent_witness(&k1, &xs, 3).unwrap();
    println!("{} on (2,5,9): {}", k1.name(), report.verdict.label());
    for row in &report.rows {
        println!("  F = {:?}: mass at s_F is {}", row.indices, row.masses[0]);
    }

    // Seeded random sequences, all of them witnesses.
    let k2 = cp2();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut all = true;
    for _ in 0..25 {
        let mut vals = BTreeSet::new();
        while vals.len() < 5 {
            vals.insert(rng.random_range(1..=30u64));
        }
        let xs = SequenceCandidate::for_descriptor(vals.into_iter().map(Nat).collect(), &k2)
            .unwrap();
        all &= recurrent_witness(&k2, &xs, 5).unwrap().verdict.label() == "witness";
    }
    println!("\n25 random length-5 sequences in {}: all witnesses = {all}", k2.name());

    // Support closure.  In cp1 the supports keep climbing (2*2 reaches 4,
    // 4*4 reaches 8, …), so the closure of {2} escapes every finite window.
    let gens: BTreeSet<_> = [Nat(2)].into_iter().collect();
    for max in [8u64, 64] {
        match subalgebra_closure(&k1, &gens, &Window::nat_range(max)).unwrap() {
            ClosureOutcome::Closed { set, .. } => println!(
                "\nclosure of {{2}} in cp1, window {max}: closed with {} points",
                set.len()
            ),
            ClosureOutcome::EscapesWindow(e) => {
                println!("closure of {{2}} in cp1 escapes window {max} at {e}")
            }
        }
    }

    // Downward-supported structures do close: in Dunkl–Ramirez the diagonal
    // spreads only below its argument.
    let dunkl = hyperconv::constructions::dunkl_ramirez(hyperconv::rational::rat(1, 3)).unwrap();
    let gens: BTreeSet<_> = [Nat(3)].into_iter().collect();
    match subalgebra_closure(&dunkl, &gens, &Window::nat_range(10)).unwrap() {
        ClosureOutcome::Closed { set, additive_closed } => println!(
            "closure of {{3}} in {}: {:?} (additively closed: {:?})",
            dunkl.name(),
            set.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            additive_closed
        ),
        ClosureOutcome::EscapesWindow(e) => println!("escapes at {e}"),
    }

    // The S_k semigroups behind the mod-4^k colorings have no two-sided
    // identity: 0 works on the residue block but fails on the tail kℕ+1,
    // and that absence is what blocks the naive subalgebra argument.
    let s2 = sk_semigroup(2).unwrap();
    println!(
        "\n{}: identity: {}; 5 + 0 = {} (so 0 is not an identity), 5 + 5 = {}",
        s2.name(),
        match s2.identity() {
            Some(e) => e.to_string(),
            None => "none".into(),
        },
        s2.op(&Nat(5), &Nat(0)).unwrap(),
        s2.op(&Nat(5), &Nat(5)).unwrap(),
    );
}
