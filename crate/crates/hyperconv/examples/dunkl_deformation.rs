//! The one-parameter Dunkl–Ramirez family on ℕ.
//!
//! Off the diagonal it is just max: δ_m * δ_n = δ_{max(m,n)}.  On the
//! diagonal δ_n * δ_n spreads geometrically below n with parameter a,
//! keeping a (1−a) head at n itself.  Admissible range is 0 < a ≤ 1/2;
//! past 1/2 associativity breaks, and the constructor rejects it.

use hyperconv::axioms::{center, check_all, Window};
use hyperconv::constructions::dunkl_ramirez;
use hyperconv::rational::rat;
use hyperconv::CarrierElement::Nat;

fn main() {
    let k = dunkl_ramirez(rat(1, 3)).unwrap();

    println!("{}", k.name());
    println!("  d_2 * d_5 = {}", k.convolve(&Nat(2), &Nat(5)).unwrap());
    for n in 1..=4u64 {
        println!("  d_{n} * d_{n} = {}", k.convolve(&Nat(n), &Nat(n)).unwrap());
    }

    let window = Window::nat_range(10);
    let report = check_all(&k, &window).unwrap();
    println!("\naxioms on {{0..10}}: passed = {}", report.passed());

    // Only the identity is central: every other x has spt(d_x * d_x)
    // non-singleton, and centrality demands singleton supports throughout.
    let z = center(&k, &window).unwrap();
    println!("center on the window: {:?}", z.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    // The constructor enforces the parameter range.
    for a in [rat(1, 2), rat(2, 3)] {
        match dunkl_ramirez(a.clone()) {
            Ok(k) => println!("a = {}: ok ({})", a, k.name()),
            Err(e) => println!("a = {}: rejected ({e})", a),
        }
    }
}
