//! Acceptance sweep: ten exact, finite computations, one pass/fail line
//! each.  Every comparison is literal equality of reduced rationals or of
//! whole measures; nothing is approximate.  Run with `--nocapture` to see
//! the lines for passing criteria too.

use hyperconv::algebra::CarrierAlgebra;
use hyperconv::axioms::{check_all, Window};
use hyperconv::carrier::CarrierElement;
use hyperconv::constructions::{
    automorphism_orbit_hypergroup, cp1, cp2, double_coset_hypergroup, dunkl_ramirez,
    klein_action_on_pairs, max_deformation, orbit_semiconvo, polynomial_hypergroup,
    q1_degenerate_base, ross_quotient, sign_action_on_int, DeformationWeights,
};
use hyperconv::measure::FiniteMeasure;
use hyperconv::polynomial::Recurrence;
use hyperconv::ramsey::{
    check_criterion, cp2_alpha_instances, orbit_mass_bound, quotient_pushforward_identity,
    recurrent_witness, search_sequence, verify_cp2_alpha, verify_cp2_mod3, Coloring, Criterion,
    SequenceCandidate, Verdict,
};
use hyperconv::rational::{rat, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

fn line(n: u32, desc: &str, ok: bool) {
    println!(
        "acceptance {n:02} ({desc}): {}",
        if ok { "pass" } else { "fail" }
    );
    assert!(ok, "acceptance criterion {n} failed: {desc}");
}

fn nat(n: u64) -> CarrierElement {
    CarrierElement::Nat(n)
}

/// ½δ_{|n−m|} + ½δ_{n+m}, merged when the two points coincide.
fn cp1_expected(m: u64, n: u64) -> FiniteMeasure {
    let mut weights: BTreeMap<u64, Rat> = BTreeMap::new();
    for point in [m.abs_diff(n), m + n] {
        *weights.entry(point).or_insert_with(|| rat(0, 1)) += rat(1, 2);
    }
    FiniteMeasure::from_weights(weights.into_iter().map(|(p, w)| (nat(p), w))).unwrap()
}

/// Σ_{k=0}^{min(m,n)} (|m−n|+2k+1)/((m+1)(n+1)) δ_{|m−n|+2k}.
fn cp2_expected(m: u64, n: u64) -> FiniteMeasure {
    let d = m.abs_diff(n);
    let den = ((m + 1) * (n + 1)) as i64;
    FiniteMeasure::from_weights(
        (0..=m.min(n)).map(|k| (nat(d + 2 * k), rat((d + 2 * k + 1) as i64, den))),
    )
    .unwrap()
}

#[test]
fn c01_golden_tables() {
    let (k1, k2) = (cp1(), cp2());
    let mut ok = true;
    for m in 0..=30u64 {
        for n in 0..=30u64 {
            ok &= k1.convolve(&nat(m), &nat(n)).unwrap() == cp1_expected(m, n);
            ok &= k2.convolve(&nat(m), &nat(n)).unwrap() == cp2_expected(m, n);
        }
    }
    line(1, "cp1/cp2 closed-form tables on m,n <= 30", ok);
}

#[test]
fn c02_linearization_oracle() {
    let mut ok = true;
    for (rec, reference) in [
        (Recurrence::chebyshev_t(), cp1()),
        (Recurrence::chebyshev_u_normalized(), cp2()),
    ] {
        let built = polynomial_hypergroup(&rec, 30).unwrap();
        for m in 0..=30u64 {
            for n in 0..=30u64 {
                let mu = built.convolve(&nat(m), &nat(n)).unwrap();
                ok &= mu == reference.convolve(&nat(m), &nat(n)).unwrap();
                // Strict positivity at both support extremes.
                ok &= !mu.weight(&nat(m.abs_diff(n))).is_zero();
                ok &= !mu.weight(&nat(m + n)).is_zero();
            }
        }
    }
    line(2, "recurrence-built tables match cp1/cp2 with positive extremes", ok);
}

#[test]
fn c03_orbit_equivalence() {
    let oc =
        automorphism_orbit_hypergroup(&CarrierAlgebra::int_add(), sign_action_on_int()).unwrap();
    let reference = cp1();
    let mut ok = true;
    for m in 0..=50i64 {
        for n in 0..=50i64 {
            let mapped = oc
                .descriptor()
                .convolve(
                    &oc.orbit_of(&CarrierElement::Int(m)).unwrap(),
                    &oc.orbit_of(&CarrierElement::Int(n)).unwrap(),
                )
                .unwrap()
                .map_elements(|label| {
                    let v = label
                        .members()
                        .unwrap()
                        .iter()
                        .filter_map(|e| e.as_int())
                        .map(i64::unsigned_abs)
                        .max()
                        .unwrap();
                    nat(v)
                });
            ok &= mapped
                == reference
                    .convolve(&nat(m as u64), &nat(n as u64))
                    .unwrap();
        }
    }
    line(3, "Z/{±1} orbit table equals cp1 on {0..50}", ok);
}

#[test]
fn c04_axiom_sweeps() {
    let mut ok = true;

    let dunkl = dunkl_ramirez(rat(1, 3)).unwrap();
    ok &= check_all(&dunkl, &Window::nat_range(12)).unwrap().passed();

    let deformed = max_deformation(DeformationWeights::powers_of_two(), 16).unwrap();
    ok &= check_all(&deformed, &Window::nat_range(12)).unwrap().passed();

    let s3 = CarrierAlgebra::symmetric_group3();
    let h: Vec<CarrierElement> = s3
        .elements()
        .unwrap()
        .iter()
        .filter(|x| matches!(x.to_string().as_str(), "e" | "(12)"))
        .cloned()
        .collect();
    let dc = double_coset_hypergroup(&s3, &h).unwrap();
    let dc_window = Window::new(dc.finite_carrier().unwrap().to_vec()).unwrap();
    ok &= check_all(&dc, &dc_window).unwrap().passed();

    let base = Arc::new(q1_degenerate_base(16).unwrap());
    let qc = ross_quotient(base, &[nat(0), nat(1)], &Window::nat_range(12)).unwrap();
    let labels: BTreeSet<CarrierElement> = (0..=12).map(|n| qc.project(&nat(n)).unwrap()).collect();
    let q_window = Window::new(labels.into_iter().collect()).unwrap();
    ok &= q_window.len() == 12;
    ok &= check_all(qc.descriptor(), &q_window).unwrap().passed();

    line(4, "axiom sweeps for dunkl, deformation, double coset, quotient", ok);
}

#[test]
fn c05_cp2_mod3_obstruction() {
    let pairs = verify_cp2_mod3(200).unwrap();
    let window = Window::new((1..=60).map(nat).collect()).unwrap();
    let search = search_sequence(
        &cp2(),
        &Coloring::mod_k(3).unwrap(),
        2,
        &window,
        &Criterion::Mono,
    )
    .unwrap();
    let ok = pairs.verdict == Verdict::Refuted
        && pairs.cases == 200 * 199 / 2
        && search.verdict == Verdict::Exhausted;
    line(5, "every cp2 pair meets two mod-3 classes; depth-2 search exhausts", ok);
}

#[test]
fn c06_cp2_alpha_counterexample() {
    let canonical = verify_cp2_alpha(2, 1, 32, 112).unwrap();
    let mut ok = canonical.lhs == rat(5, 33)
        && canonical.closed_form == rat(5, 33)
        && canonical.remark_form == rat(5, 33)
        && canonical.bound == rat(55, 224)
        && canonical.lhs < canonical.bound;
    let instances = cp2_alpha_instances(21);
    ok &= instances.len() == 21;
    for (k, i, m, n) in instances {
        let r = verify_cp2_alpha(k, i, m, n).unwrap();
        ok &= r.matches && r.holds;
    }
    line(6, "alpha-mass closed forms and bound on 21 instances", ok);
}

#[test]
fn c07_recurrence_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let structures: Vec<(hyperconv::HypergroupDescriptor, u64, usize)> = vec![
        (cp1(), 40, 34),
        (cp2(), 30, 33),
        (
            polynomial_hypergroup(&Recurrence::chebyshev_u_normalized(), 60).unwrap(),
            12,
            33,
        ),
    ];
    let mut ok = true;
    let mut sequences = 0usize;
    for (k, max_term, count) in &structures {
        for _ in 0..*count {
            let mut vals = BTreeSet::new();
            while vals.len() < 5 {
                vals.insert(rng.random_range(1..=*max_term));
            }
            let xs =
                SequenceCandidate::for_descriptor(vals.into_iter().map(nat).collect(), k).unwrap();
            let report = recurrent_witness(k, &xs, 5).unwrap();
            ok &= report.verdict == Verdict::Witness && report.cases == 31;
            sequences += 1;
        }
    }
    ok &= sequences == 100;
    line(7, "s_F in spt(delta_F) for 100 seeded sequences, |F| <= 5", ok);
}

#[test]
fn c08_pushforward_identity() {
    let base = Arc::new(q1_degenerate_base(16).unwrap());
    let qc = ross_quotient(Arc::clone(&base), &[nat(0), nat(1)], &Window::nat_range(9)).unwrap();
    let labels: Vec<CarrierElement> = (0..=9)
        .map(|n| qc.project(&nat(n)).unwrap())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // All coset sets in the window, with their preimages computed once.
    let subsets: Vec<(BTreeSet<CarrierElement>, BTreeSet<CarrierElement>)> = (0u32
        ..1 << labels.len())
        .map(|mask| {
            let e: BTreeSet<CarrierElement> = labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, l)| l.clone())
                .collect();
            let pre = qc.preimage(&e).unwrap();
            (e, pre)
        })
        .collect();

    let mut ok = true;
    let mut checked = 0usize;
    let pool: Vec<u64> = (2..=8).collect();
    let mut stack: Vec<Vec<u64>> = pool.iter().map(|&x| vec![x]).collect();
    while let Some(xs) = stack.pop() {
        if xs.len() < 3 {
            for &x in &pool {
                let mut next = xs.clone();
                next.push(x);
                stack.push(next);
            }
        }
        let elems: Vec<CarrierElement> = xs.iter().map(|&x| nat(x)).collect();
        let projected: Vec<CarrierElement> =
            elems.iter().map(|x| qc.project(x).unwrap()).collect();
        let lhs = qc.descriptor().convolve_sequence(&projected).unwrap();
        let rhs = base.convolve_sequence(&elems).unwrap();
        for (e, pre) in &subsets {
            ok &= lhs.mass(e) == rhs.mass(pre);
            checked += 1;
        }
        // The op itself agrees on the full coset window.
        let report = quotient_pushforward_identity(&qc, &elems, &subsets.last().unwrap().0).unwrap();
        ok &= report.equal;
    }
    // (7 + 7² + 7³) sequences × 2⁹ coset sets.
    ok &= checked == (7 + 49 + 343) * 512;
    line(8, "push-forward identity on all xs <= 3 from {2..8} and all E", ok);
}

#[test]
fn c09_orbit_mass_bounds() {
    let int = CarrierAlgebra::int_add();
    let pairs = CarrierAlgebra::int_pair_add();
    let lift_z: Vec<CarrierElement> = [1i64, 3, 9, 27].iter().map(|&v| CarrierElement::Int(v)).collect();
    let lift_zz: Vec<CarrierElement> = [(1i64, 2i64), (4, 8), (16, 32), (64, 128)]
        .iter()
        .map(|&(a, b)| CarrierElement::IntPair(a, b))
        .collect();
    let scenarios = [
        (
            automorphism_orbit_hypergroup(&int, sign_action_on_int()).unwrap(),
            &lift_z,
        ),
        (orbit_semiconvo(&int, sign_action_on_int()).unwrap(), &lift_z),
        (
            automorphism_orbit_hypergroup(&pairs, klein_action_on_pairs()).unwrap(),
            &lift_zz,
        ),
    ];
    let mut ok = true;
    for (oc, lift) in &scenarios {
        for mask in 1u32..16 {
            let f: Vec<usize> = (1..=4).filter(|j| mask & (1 << (j - 1)) != 0).collect();
            ok &= orbit_mass_bound(oc, lift, &f).unwrap().holds;
        }
    }
    line(9, "orbit mass bounds for c=2 and Klein c=4, m <= 4", ok);
}

#[test]
fn c10_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut ok = true;
    let mut cases = 0usize;

    let k1 = cp1();
    let k2 = cp2();
    let dunkl = dunkl_ramirez(rat(1, 3)).unwrap();
    let deformed = max_deformation(DeformationWeights::powers_of_two(), 64).unwrap();

    let random_measure = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=5usize);
        let mut entries: BTreeMap<u64, Rat> = BTreeMap::new();
        for _ in 0..n {
            *entries
                .entry(rng.random_range(0..=20u64))
                .or_insert_with(|| rat(0, 1)) += rat(rng.random_range(1..=9i64), 1);
        }
        let total: Rat = entries.values().cloned().sum();
        FiniteMeasure::from_weights(entries.into_iter().map(|(p, w)| (nat(p), w / &total)))
            .unwrap()
    };

    // Normalization: mixtures and convolutions of probability measures stay
    // probability measures, with every weight strictly positive.
    for _ in 0..150 {
        let mu = random_measure(&mut rng);
        let nu = random_measure(&mut rng);
        let conv = k1.convolve_m(&mu, &nu).unwrap();
        let total: Rat = conv.iter().map(|(_, w)| w.clone()).sum();
        ok &= total == rat(1, 1);
        ok &= conv.iter().all(|(_, w)| w > &rat(0, 1));
        cases += 1;
    }

    // Bilinearity: (aμ + bν) * ρ = a(μ*ρ) + b(ν*ρ), exactly.
    for _ in 0..100 {
        let mu = random_measure(&mut rng);
        let nu = random_measure(&mut rng);
        let rho = random_measure(&mut rng);
        let a = rat(rng.random_range(0..=4i64), 4);
        let b = rat(1, 1) - &a;
        let mixed = FiniteMeasure::mix(&[(a.clone(), &mu), (b.clone(), &nu)]).unwrap();
        let lhs = k2.convolve_m(&mixed, &rho).unwrap();
        let rhs = FiniteMeasure::mix(&[
            (a, &k2.convolve_m(&mu, &rho).unwrap()),
            (b, &k2.convolve_m(&nu, &rho).unwrap()),
        ])
        .unwrap();
        ok &= lhs == rhs;
        cases += 1;
    }

    // Bracketing independence: the left fold equals the right fold.
    for _ in 0..100 {
        let k = match rng.random_range(0..3u32) {
            0 => &k1,
            1 => &k2,
            _ => &dunkl,
        };
        let len = rng.random_range(3..=5usize);
        let xs: Vec<CarrierElement> = (0..len).map(|_| nat(rng.random_range(0..=12))).collect();
        let left = k.convolve_sequence(&xs).unwrap();
        let mut right = FiniteMeasure::point_mass(xs[len - 1].clone());
        for x in xs[..len - 1].iter().rev() {
            right = k
                .convolve_m(&FiniteMeasure::point_mass(x.clone()), &right)
                .unwrap();
        }
        ok &= left == right;
        cases += 1;
    }

    // Hermitian descriptors are commutative.
    for _ in 0..75 {
        let k = match rng.random_range(0..4u32) {
            0 => &k1,
            1 => &k2,
            2 => &dunkl,
            _ => &deformed,
        };
        let x = nat(rng.random_range(0..=15));
        let y = nat(rng.random_range(0..=15));
        ok &= k.convolve(&x, &y).unwrap() == k.convolve(&y, &x).unwrap();
        cases += 1;
    }

    // Mono witnesses survive every weakening to AlphaMass, and AlphaMass
    // witnesses survive lowering alpha.
    for _ in 0..75 {
        let mut vals = BTreeSet::new();
        let len = rng.random_range(2..=4usize);
        while vals.len() < len {
            vals.insert(rng.random_range(1..=30u64));
        }
        let xs = SequenceCandidate::for_descriptor(
            vals.into_iter().map(nat).collect(),
            &deformed,
        )
        .unwrap();
        let coloring = Coloring::mod_k(rng.random_range(2..=3)).unwrap();
        let depth = xs.len();
        let alpha = rat(rng.random_range(0..=9i64), 10);
        let beta = rat(rng.random_range(0..=9i64), 10);
        let (lo, hi) = if alpha <= beta {
            (alpha.clone(), beta)
        } else {
            (beta, alpha.clone())
        };
        let mono = check_criterion(&deformed, &xs, &coloring, depth, &Criterion::Mono).unwrap();
        let weak =
            check_criterion(&deformed, &xs, &coloring, depth, &Criterion::AlphaMass(alpha)).unwrap();
        if mono.verdict == Verdict::Witness {
            ok &= weak.verdict == Verdict::Witness;
        }
        let at_hi =
            check_criterion(&deformed, &xs, &coloring, depth, &Criterion::AlphaMass(hi)).unwrap();
        let at_lo =
            check_criterion(&deformed, &xs, &coloring, depth, &Criterion::AlphaMass(lo)).unwrap();
        if at_hi.verdict == Verdict::Witness {
            ok &= at_lo.verdict == Verdict::Witness;
        }
        cases += 2;
    }

    ok &= cases >= 500;
    line(10, "500+ seeded property cases, zero failures", ok);
}
