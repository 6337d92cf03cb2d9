//! Quotient by a central subgroup, and the push-forward identity that makes
//! it well defined.
//!
//! The base is the max-deformation with v_1 = 1: then δ_1 * δ_1 = δ_0, so
//! {0,1} is a two-element subgroup sitting inside the center.  Cosets are
//! {0,1}, {2}, {3}, … and the quotient convolution is the push-forward of
//! the base convolution: for every coset set E and sequence x₁…x_r,
//!
//!   (δ_{[x₁]} * … * δ_{[x_r]})(E)  =  (δ_{x₁} * … * δ_{x_r})(π⁻¹E).

use hyperconv::axioms::Window;
use hyperconv::constructions::{q1_degenerate_base, ross_quotient};
use hyperconv::ramsey::quotient_pushforward_identity;
use hyperconv::CarrierElement::{self, Nat};
use std::collections::BTreeSet;
use std::sync::Arc;

fn main() {
    let base = Arc::new(q1_degenerate_base(16).unwrap());
    println!("base {}:", base.name());
    println!("  d_1 * d_1 = {}", base.convolve(&Nat(1), &Nat(1)).unwrap());
    for m in [2u64, 3, 4] {
        println!("  d_{m} * d_{m} = {}", base.convolve(&Nat(m), &Nat(m)).unwrap());
    }

    let qc = ross_quotient(Arc::clone(&base), &[Nat(0), Nat(1)], &Window::nat_range(9)).unwrap();
    let k = qc.descriptor();
    println!("\nquotient {}:", k.name());
    for n in 0..=4u64 {
        println!("  {n} projects to {}", qc.project(&Nat(n)).unwrap());
    }

    // The head coset [0] = {0,1} absorbs both q_m(0) and q_m(1); the tail
    // masses are untouched.
    for m in [2u64, 3, 4] {
        let label = qc.project(&Nat(m)).unwrap();
        println!("  [{m}] * [{m}] = {}", k.convolve(&label, &label).unwrap());
    }

    // Push-forward identity, checked literally on a few sequences and coset
    // sets.
    println!();
    for xs in [vec![3u64, 3], vec![4, 4], vec![2, 2, 3, 3]] {
        let elems: Vec<CarrierElement> = xs.iter().map(|&x| Nat(x)).collect();
        let e: BTreeSet<CarrierElement> = [qc.project(&Nat(0)).unwrap(), qc.project(&Nat(3)).unwrap()]
            .into_iter()
            .collect();
        let report = quotient_pushforward_identity(&qc, &elems, &e).unwrap();
        println!(
            "xs = {xs:?}, E = {{[0],[3]}}: quotient mass {} = base mass {} ({})",
            report.lhs,
            report.rhs,
            if report.equal { "equal" } else { "DIFFER" }
        );
    }
}
