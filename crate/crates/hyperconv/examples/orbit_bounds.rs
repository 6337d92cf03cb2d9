//! Guaranteed mass at the lifted product in orbit spaces.
//!
//! Lift a sequence from the orbit space back to the group and form τ = the
//! orbit of the lifted product.  However the group translates interleave,
//! δ_F keeps mass at least 1/c^{m−1} at τ when orbits have size ≤ c and
//! |F| = m (1/c^m in the affine variant, which averages over c² pairs).
//! Lifts whose partial products never collide attain the constant exactly,
//! so it cannot be improved.

use hyperconv::constructions::{
    automorphism_orbit_hypergroup, klein_action_on_pairs, orbit_semiconvo, sign_action_on_int,
};
use hyperconv::ramsey::orbit_mass_bound;
use hyperconv::rational::rat_to_string;
use hyperconv::CarrierAlgebra;
use hyperconv::CarrierElement::{Int, IntPair};

fn main() {
    let oc = automorphism_orbit_hypergroup(&CarrierAlgebra::int_add(), sign_action_on_int())
        .unwrap();
    let lift = [Int(1), Int(3), Int(9), Int(27)];
    println!("{} (c = {}):", oc.descriptor().name(), oc.c());
    for m in 1..=4usize {
        let f: Vec<usize> = (1..=m).collect();
        let r = orbit_mass_bound(&oc, &lift, &f).unwrap();
        println!(
            "  F = {f:?}: tau = {}, mass = {:>5}, bound = {:>5}, holds = {}",
            r.tau,
            rat_to_string(&r.mass_at_tau),
            rat_to_string(&r.bound),
            r.holds
        );
    }

    // The affine variant averages over c² translate pairs, so its guarantee
    // drops to 1/c^m; the actual mass here sits strictly above it.
    let sv = orbit_semiconvo(&CarrierAlgebra::int_add(), sign_action_on_int()).unwrap();
    let r = orbit_mass_bound(&sv, &lift, &[1, 2, 3]).unwrap();
    println!(
        "\n{}: F = [1,2,3], mass = {} >= bound {} (affine exponent m), holds = {}",
        sv.descriptor().name(),
        rat_to_string(&r.mass_at_tau),
        rat_to_string(&r.bound),
        r.holds
    );

    // Klein action, c = 4: the power-of-two pair lift keeps all partial sums
    // in distinct orbits, so the mass lands exactly on the guarantee.
    let klein = automorphism_orbit_hypergroup(
        &CarrierAlgebra::int_pair_add(),
        klein_action_on_pairs(),
    )
    .unwrap();
    let lift = [IntPair(1, 2), IntPair(4, 8), IntPair(16, 32), IntPair(64, 128)];
    println!("\n{} (c = {}):", klein.descriptor().name(), klein.c());
    for m in 1..=4usize {
        let f: Vec<usize> = (1..=m).collect();
        let r = orbit_mass_bound(&klein, &lift, &f).unwrap();
        let tight = r.mass_at_tau == r.bound;
        println!(
            "  |F| = {m}: mass = {:>6}, bound = {:>6}, tight = {tight}",
            rat_to_string(&r.mass_at_tau),
            rat_to_string(&r.bound)
        );
    }
}
