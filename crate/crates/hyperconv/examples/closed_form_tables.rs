//! The two Chebyshev convolutions in closed form.
//!
//! cp1: δ_m * δ_n = ½δ_{|n−m|} + ½δ_{n+m}
//! cp2: δ_m * δ_n = Σ_k (|m−n|+2k+1)/((m+1)(n+1)) δ_{|m−n|+2k}, k ≤ min(m,n)

use hyperconv::constructions::{cp1, cp2};
use hyperconv::CarrierElement::Nat;

fn main() {
    let k1 = cp1();
    let k2 = cp2();

    println!("{}: convolution of small pairs", k1.name());
    for (m, n) in [(0, 5), (2, 2), (3, 7), (4, 4)] {
        println!("  d_{m} * d_{n} = {}", k1.convolve(&Nat(m), &Nat(n)).unwrap());
    }

    println!("\n{}: full rows grow with min(m, n)", k2.name());
    for (m, n) in [(1, 1), (2, 3), (4, 4), (2, 6)] {
        println!("  d_{m} * d_{n} = {}", k2.convolve(&Nat(m), &Nat(n)).unwrap());
    }

    // The cp2 numerators telescope: Σ_{k<=min} (|m−n|+2k+1) = (min+1)(max+1),
    // which is exactly the (m+1)(n+1) denominator.  That is why every row is
    // a probability vector with no normalization step.
    let m = 5u64;
    let n = 8u64;
    let numerators: u64 = (0..=m.min(n)).map(|k| m.abs_diff(n) + 2 * k + 1).sum();
    println!("\nrow-sum identity at ({m},{n}): sum of numerators = {numerators}, (m+1)(n+1) = {}", (m + 1) * (n + 1));

    // Convolution powers of a single point spread across the parity band.
    println!("\ncp2 convolution powers of d_3:");
    let mut mu = hyperconv::FiniteMeasure::point_mass(Nat(3));
    for step in 2..=4 {
        mu = k2.convolve_m(&mu, &hyperconv::FiniteMeasure::point_mass(Nat(3))).unwrap();
        println!("  d_3^{step} = {mu}");
    }
}
