//! Deforming the idempotent semigroup (ℤ₊, max).
//!
//! A weight sequence v with v_0 = 1 and Σ_{k<n} v_k ≤ v_n turns max into a
//! hypergroup: δ_m * δ_n stays δ_{max} off the diagonal, while δ_n * δ_n
//! redistributes mass over {0..n} proportionally to the v_k, with the
//! admissibility gap Σ_{k<n} v_k ≤ v_n keeping the head weight nonnegative.

use hyperconv::axioms::{check_all, Window};
use hyperconv::constructions::{
    check_idempotent_deformation, deform, max_deformation, DeformationWeights,
};
use hyperconv::rational::rat;
use hyperconv::CarrierAlgebra;
use hyperconv::CarrierElement::Nat;

fn main() {
    let k = max_deformation(DeformationWeights::powers_of_two(), 32).unwrap();
    println!("{}", k.name());
    for n in 1..=4u64 {
        println!("  d_{n} * d_{n} = {}", k.convolve(&Nat(n), &Nat(n)).unwrap());
    }
    println!("  d_3 * d_5 = {}", k.convolve(&Nat(3), &Nat(5)).unwrap());
    let report = check_all(&k, &Window::nat_range(10)).unwrap();
    println!("axioms on {{0..10}}: passed = {}", report.passed());

    // v_n = 1 fails admissibility at n = 2 (1 + 1 > 1); the six-condition
    // precheck catches it before any descriptor exists.
    match max_deformation(DeformationWeights::ones(), 8) {
        Ok(_) => println!("\nones: unexpectedly accepted"),
        Err(e) => println!("\nones: rejected ({e})"),
    }

    // The general deform() accepts any q that survives the six-condition
    // precheck on a window.  A q not of the v-proportional shape usually
    // does not: splitting mass evenly between n and 0 breaks three of them.
    let s = CarrierAlgebra::non_neg_max();
    let split = |x: &CarrierElement| -> Option<FiniteMeasure> {
        let n = x.as_nat()?;
        if n == 0 {
            return Some(FiniteMeasure::point_mass(Nat(0)));
        }
        Some(FiniteMeasure::from_weights([(Nat(n), rat(1, 2)), (Nat(0), rat(1, 2))]).unwrap())
    };
    let window: Vec<CarrierElement> = (0..=8).map(Nat).collect();
    let precheck = check_idempotent_deformation(&s, &split, &window).unwrap();
    println!("\neven-split q precheck on (Z+,max): passed = {}", precheck.passed());
    for c in precheck.checks.iter().filter(|c| !c.passed) {
        println!("  failed: {}", c.axiom);
    }

    // A v-induced q does pass.  v_1 = 1 makes q_1 = δ_0 — the diagonal at 1
    // collapses completely, which is what later turns {0,1} into a central
    // subgroup worth quotienting by.
    let weights = DeformationWeights::q1_degenerate();
    let q = move |x: &CarrierElement| -> Option<FiniteMeasure> {
        let n = x.as_nat()? as usize;
        let vn = weights.value(n).ok()?;
        let mut atoms: Vec<(CarrierElement, Rat)> = Vec::new();
        let mut head = Rat::one();
        for k in 0..n {
            let share = weights.value(k).ok()? / &vn;
            head -= &share;
            atoms.push((Nat(k as u64), share));
        }
        atoms.push((Nat(n as u64), head));
        FiniteMeasure::from_weights(atoms.into_iter().filter(|(_, w)| !w.is_zero())).ok()
    };
    let d = deform(&s, &q, &window).unwrap();
    println!("\n{}:", d.name());
    println!("  d_1 * d_1 = {}", d.convolve(&Nat(1), &Nat(1)).unwrap());
    println!("  d_3 * d_3 = {}", d.convolve(&Nat(3), &Nat(3)).unwrap());
}

use hyperconv::rational::Rat;
use hyperconv::{CarrierElement, FiniteMeasure};
use num_traits::{One, Zero};
