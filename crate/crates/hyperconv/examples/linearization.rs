//! Building convolutions from three-term recurrences.
//!
//! Any orthogonal polynomial family p_n with nonnegative linearization
//! coefficients induces a hypergroup on ℕ: the weights of δ_m * δ_n are the
//! coefficients of p_m·p_n expanded back in the p_k basis.  The engine
//! computes that expansion exactly and refuses families where a coefficient
//! goes negative.

use hyperconv::axioms::{check_all, Window};
use hyperconv::constructions::{cp1, cp2, polynomial_hypergroup};
use hyperconv::polynomial::{Polynomial, Recurrence};
use hyperconv::rational::rat;
use hyperconv::CarrierElement::Nat;

fn main() {
    // The two Chebyshev recurrences recover the closed-form structures.
    for (rec, reference) in [
        (Recurrence::chebyshev_t(), cp1()),
        (Recurrence::chebyshev_u_normalized(), cp2()),
    ] {
        let built = polynomial_hypergroup(&rec, 20).unwrap();
        let mut agree = true;
        for m in 0..=20u64 {
            for n in 0..=20u64 {
                agree &= built.convolve(&Nat(m), &Nat(n)).unwrap()
                    == reference.convolve(&Nat(m), &Nat(n)).unwrap();
            }
        }
        println!("{} reproduces {} on n,m <= 20: {agree}", rec.name(), reference.name());
    }

    // A custom recurrence: x·p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}.
    // This one mixes in a diagonal term, so supports lose the parity gap.
    let rec = Recurrence::new(
        "lopsided",
        |_n| rat(1, 2),
        |_n| rat(1, 4),
        |_n| rat(1, 4),
        Polynomial::x(),
    );
    // Associativity on the window {0..8} triples products up to index 24,
    // so the linearization table has to reach that far.
    let k = polynomial_hypergroup(&rec, 24).unwrap();
    println!("\n{}:", k.name());
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        println!("  d_{m} * d_{n} = {}", k.convolve(&Nat(m), &Nat(n)).unwrap());
    }

    let report = check_all(&k, &Window::nat_range(8)).unwrap();
    println!("axioms on {{0..8}}: passed = {}", report.passed());
    for check in &report.checks {
        println!("  {:<24} {} ({} cases)", check.axiom, if check.passed { "ok" } else { "FAILED" }, check.cases);
    }
}
