//! Finite-subset convolutions and the bounded partition search.
//!
//! For a sequence x and a nonempty finite index set F, δ_F is the convolution
//! of the δ_{x_i}, i ∈ F.  A coloring partitions the carrier into classes;
//! a sequence is a witness for a criterion when every δ_F behaves the same
//! way with respect to the classes.  The search enumerates candidate
//! sequences in lexicographic order with prefix pruning, so the reported
//! witness is canonical and the exhaustion bound is explicit.

use hyperconv::axioms::Window;
use hyperconv::constructions::{cp1, cp2};
use hyperconv::ramsey::{
    check_criterion, fs_fp_set, search_sequence, sfc, Coloring, Criterion, SequenceCandidate,
    Verdict,
};
use hyperconv::CarrierAlgebra;
use hyperconv::CarrierElement::Nat;

fn main() {
    // In a plain semigroup the families collapse to the finite-sums set.
    let s = CarrierAlgebra::non_neg_add();
    let xs = SequenceCandidate::new(vec![Nat(1), Nat(3), Nat(9)], None).unwrap();
    let sums = fs_fp_set(&s, &xs, 3).unwrap();
    println!(
        "FS({{1,3,9}}) = {:?}",
        sums.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );

    // In a hypergroup each family is a measure, not a point.
    let k1 = cp1();
    let xs = SequenceCandidate::for_descriptor(vec![Nat(2), Nat(4), Nat(6)], &k1).unwrap();
    println!("\nSFC families of (2,4,6) in {}:", k1.name());
    for entry in sfc(&k1, &xs, 3).unwrap() {
        println!("  F = {:?}: {}", entry.indices, entry.measure);
    }

    // All supports above live in the even class: a mod-2 mono witness.
    let mono = check_criterion(&k1, &xs, &Coloring::mod_k(2).unwrap(), 3, &Criterion::Mono)
        .unwrap();
    println!("mono verdict for (2,4,6) under mod-2: {}", mono.verdict.label());

    // The search finds the least witness of length 3.
    let window = Window::new((1..=20).map(Nat).collect()).unwrap();
    let found = search_sequence(&k1, &Coloring::mod_k(2).unwrap(), 3, &window, &Criterion::Mono)
        .unwrap();
    println!(
        "search over {{1..20}}: verdict = {}, sequence = {:?}, class = {:?}",
        found.verdict.label(),
        found.sequence.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        found.witness_class
    );

    // cp2 against mod 3 is different: already for pairs, δ_{i,j} always
    // meets two classes, so the depth-2 search exhausts its window.
    let k2 = cp2();
    let window = Window::new((1..=40).map(Nat).collect()).unwrap();
    let report = search_sequence(&k2, &Coloring::mod_k(3).unwrap(), 2, &window, &Criterion::Mono)
        .unwrap();
    println!(
        "\n{} vs mod-3, depth 2, window {{1..40}}: {} after {} cases",
        k2.name(),
        report.verdict.label(),
        report.cases
    );
    assert_eq!(report.verdict, Verdict::Exhausted);
}
