//! The α-mass computation on cp2 residue classes.
//!
//! For the class C_i = {j ≡ i−1 mod 4ᵏ} and indices m ≡ n ≡ i−1 (mod 4ᵏ)
//! with m, n ≥ i, the mass δ_n * δ_m(C_i) has the closed form (2l₀+1)/(m+1)
//! with l₀ = (m−i+1)/4ᵏ, and stays strictly below
//! (2l₀+1)(l₀+l₁+2)/(l₀·l₁·4ᵏ).  Both claims are verified by brute-force
//! summation over the cp2 support — no floating point anywhere.

use hyperconv::ramsey::{cp2_alpha_instances, verify_cp2_alpha};
use hyperconv::rational::rat_to_string;

fn main() {
    let r = verify_cp2_alpha(2, 1, 32, 112).unwrap();
    println!("canonical instance k=2, i=1, m=32, n=112:");
    println!("  l0 = {}, l1 = {}", r.l0, r.l1);
    println!("  brute-force mass  = {}", rat_to_string(&r.lhs));
    println!("  closed form       = {}", rat_to_string(&r.closed_form));
    println!("  remark form       = {}", rat_to_string(&r.remark_form));
    println!("  bound             = {}", rat_to_string(&r.bound));
    println!("  matches = {}, below bound = {}", r.matches, r.holds);

    println!("\nfirst 21 instances:");
    println!("  {:>2} {:>3} {:>5} {:>5}  {:>12} {:>14}  ok", "k", "i", "m", "n", "mass", "bound");
    for (k, i, m, n) in cp2_alpha_instances(21) {
        let r = verify_cp2_alpha(k, i, m, n).unwrap();
        println!(
            "  {:>2} {:>3} {:>5} {:>5}  {:>12} {:>14}  {}",
            k,
            i,
            m,
            n,
            rat_to_string(&r.lhs),
            rat_to_string(&r.bound),
            r.matches && r.holds
        );
    }

    // The preconditions are hard errors, not silent skips.
    println!();
    for (k, i, m, n) in [(1u32, 1u64, 32u64, 112u64), (2, 1, 33, 112), (2, 1, 112, 32)] {
        match verify_cp2_alpha(k, i, m, n) {
            Ok(_) => println!("({k},{i},{m},{n}): ok"),
            Err(e) => println!("({k},{i},{m},{n}): {e}"),
        }
    }
}
