//! Orbit spaces of group actions as hypergroups.
//!
//! Acting on (ℤ,+) by sign gives orbits {n,−n}; the induced convolution of
//! orbit labels averages the group translates and lands exactly on cp1 after
//! renaming {n,−n} ↦ n.  A Klein four-group acting coordinatewise on ℤ×ℤ
//! gives the c = 4 analogue.  Without inverses (semigroup variant) the same
//! recipe still yields a semiconvo, just not a hypergroup.

use hyperconv::constructions::{
    automorphism_orbit_hypergroup, cp1, klein_action_on_pairs, orbit_semiconvo,
    semigroup_orbit_semiconvo, sign_action_on_int,
};
use hyperconv::CarrierAlgebra;
use hyperconv::CarrierElement::{Int, IntPair, Nat};

fn main() {
    let oc = automorphism_orbit_hypergroup(&CarrierAlgebra::int_add(), sign_action_on_int())
        .unwrap();
    let k = oc.descriptor();
    println!("{} (orbit size bound c = {})", k.name(), oc.c());
    for (m, n) in [(2i64, 2i64), (3, 7)] {
        let mu = k
            .convolve(&oc.orbit_of(&Int(m)).unwrap(), &oc.orbit_of(&Int(n)).unwrap())
            .unwrap();
        println!("  [{m}] * [{n}] = {mu}");
    }

    // Renaming each orbit to its nonnegative representative recovers cp1.
    let reference = cp1();
    let mut agree = true;
    for m in 0..=40i64 {
        for n in 0..=40i64 {
            let mapped = k
                .convolve(&oc.orbit_of(&Int(m)).unwrap(), &oc.orbit_of(&Int(n)).unwrap())
                .unwrap()
                .map_elements(|label| {
                    let rep = label
                        .members()
                        .unwrap()
                        .iter()
                        .filter_map(|e| e.as_int())
                        .map(i64::unsigned_abs)
                        .max()
                        .unwrap();
                    Nat(rep)
                });
            agree &= mapped == reference.convolve(&Nat(m as u64), &Nat(n as u64)).unwrap();
        }
    }
    println!("matches cp1 after renaming on {{0..40}}: {agree}");

    let klein = automorphism_orbit_hypergroup(
        &CarrierAlgebra::int_pair_add(),
        klein_action_on_pairs(),
    )
    .unwrap();
    let x = klein.orbit_of(&IntPair(1, 2)).unwrap();
    let y = klein.orbit_of(&IntPair(4, 8)).unwrap();
    println!("\n{} (c = {})", klein.descriptor().name(), klein.c());
    println!("  [{}] members: {}", x, x.members().unwrap().len());
    let mu = klein.descriptor().convolve(&x, &y).unwrap();
    println!("  [(1,2)] * [(4,8)] has {} atoms, each of mass 1/4", mu.support_len());

    // The semigroup variant drops the involution: orbits of the sign action
    // restricted to a semigroup action still convolve associatively.
    let sg = semigroup_orbit_semiconvo(&CarrierAlgebra::int_add(), sign_action_on_int()).unwrap();
    println!("\n{} claims: {:?}", sg.descriptor().name(), sg
        .descriptor()
        .claims()
        .iter()
        .map(|c| c.label())
        .collect::<Vec<_>>());

    let plain = orbit_semiconvo(&CarrierAlgebra::int_add(), sign_action_on_int()).unwrap();
    println!("{} claims: {:?}", plain.descriptor().name(), plain
        .descriptor()
        .claims()
        .iter()
        .map(|c| c.label())
        .collect::<Vec<_>>());
}
