//! Coset and double-coset spaces of S₃.
//!
//! For H = ⟨(12)⟩ the left-coset space S₃/H keeps only a one-sided identity
//! (H is not normal), so it is published as a semiconvo.  The double-coset
//! space S₃//H collapses to two classes and is a genuine hypergroup — the
//! smallest one that is not a group.

use hyperconv::axioms::{check_all, Window};
use hyperconv::constructions::{coset_semiconvo, double_coset_hypergroup};
use hyperconv::CarrierAlgebra;
use hyperconv::CarrierElement;

fn main() {
    let g = CarrierAlgebra::symmetric_group3();
    let h: Vec<CarrierElement> = g
        .elements()
        .unwrap()
        .iter()
        .filter(|x| matches!(x.to_string().as_str(), "e" | "(12)"))
        .cloned()
        .collect();

    let cosets = coset_semiconvo(&g, &h).unwrap();
    let carrier = cosets.finite_carrier().unwrap().to_vec();
    println!("{}: {} left cosets", cosets.name(), carrier.len());
    println!("claims: {:?}", cosets.claims().iter().map(|c| c.label()).collect::<Vec<_>>());
    for x in &carrier {
        for y in &carrier {
            println!("  {x} * {y} = {}", cosets.convolve(x, y).unwrap());
        }
    }

    let dc = double_coset_hypergroup(&g, &h).unwrap();
    let classes = dc.finite_carrier().unwrap().to_vec();
    println!("\n{}: {} double cosets", dc.name(), classes.len());
    for x in &classes {
        println!("  {x} has {} group elements", x.members().unwrap().len());
    }
    for x in &classes {
        for y in &classes {
            println!("  {x} * {y} = {}", dc.convolve(x, y).unwrap());
        }
    }

    let window = Window::new(classes).unwrap();
    let report = check_all(&dc, &window).unwrap();
    println!("axioms on the full carrier: passed = {}", report.passed());
    for check in &report.checks {
        println!("  {:<28} {}", check.axiom, if check.passed { "ok" } else { "FAILED" });
    }
}
