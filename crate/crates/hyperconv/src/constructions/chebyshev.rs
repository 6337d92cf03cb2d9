//! The two Chebyshev polynomial hypergroups on ℤ₊, via their closed forms.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use crate::hypergroup::{Claim, FnRule, HypergroupDescriptor};
use crate::measure::FiniteMeasure;
use crate::rational::{rat, Rat};
use serde_json::json;
use std::sync::Arc;

fn as_nat(x: &CarrierElement, who: &str) -> Result<u64> {
    x.as_nat()
        .ok_or_else(|| Error::OutsideCarrier(x.clone(), who.into()))
}

/// δ_m*δ_n = ½δ_{|n−m|} + ½δ_{n+m}; the two atoms coincide when m or n is 0.
pub fn cp1_rule(x: &CarrierElement, y: &CarrierElement) -> Result<FiniteMeasure> {
    let m = as_nat(x, "cp1")?;
    let n = as_nat(y, "cp1")?;
    FiniteMeasure::from_weights([
        (CarrierElement::Nat(m.abs_diff(n)), rat(1, 2)),
        (CarrierElement::Nat(m + n), rat(1, 2)),
    ])
}

/// δ_m*δ_n = Σ_{k=0}^{min(m,n)} (|m−n|+2k+1)/((m+1)(n+1)) δ_{|m−n|+2k}.
pub fn cp2_rule(x: &CarrierElement, y: &CarrierElement) -> Result<FiniteMeasure> {
    let m = as_nat(x, "cp2")?;
    let n = as_nat(y, "cp2")?;
    let diff = m.abs_diff(n);
    let den = Rat::from_integer(((m + 1) * (n + 1)).into());
    let mut weights = Vec::with_capacity(m.min(n) as usize + 1);
    for k in 0..=m.min(n) {
        let elem = diff + 2 * k;
        weights.push((
            CarrierElement::Nat(elem),
            Rat::from_integer((elem + 1).into()) / &den,
        ));
    }
    FiniteMeasure::from_weights(weights)
}

/// Chebyshev hypergroup of the first kind.
pub fn cp1() -> HypergroupDescriptor {
    HypergroupDescriptor::new(
        "cp1",
        CarrierKind::NonNegInt,
        CarrierElement::Nat(0),
        Arc::new(FnRule(cp1_rule)),
    )
    .hermitian()
    .with_claim(Claim::Hypergroup)
    .with_spec(json!({"builtin": "cp1", "params": {}}))
}

/// Chebyshev hypergroup of the second kind.
pub fn cp2() -> HypergroupDescriptor {
    HypergroupDescriptor::new(
        "cp2",
        CarrierKind::NonNegInt,
        CarrierElement::Nat(0),
        Arc::new(FnRule(cp2_rule)),
    )
    .hermitian()
    .with_claim(Claim::Hypergroup)
    .with_spec(json!({"builtin": "cp2", "params": {}}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_all, Window};

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    fn measure(entries: &[(u64, Rat)]) -> FiniteMeasure {
        FiniteMeasure::from_weights(entries.iter().map(|(n, w)| (nat(*n), w.clone()))).unwrap()
    }

    #[test]
    fn cp1_closed_form_values() {
        let k = cp1();
        assert_eq!(
            k.convolve(&nat(2), &nat(3)).unwrap(),
            measure(&[(1, rat(1, 2)), (5, rat(1, 2))])
        );
        assert_eq!(
            k.convolve(&nat(3), &nat(3)).unwrap(),
            measure(&[(0, rat(1, 2)), (6, rat(1, 2))])
        );
        assert_eq!(
            k.convolve(&nat(4), &nat(7)).unwrap(),
            measure(&[(3, rat(1, 2)), (11, rat(1, 2))])
        );
        assert_eq!(
            k.convolve(&nat(0), &nat(9)).unwrap(),
            FiniteMeasure::point_mass(nat(9))
        );
    }

    #[test]
    fn cp2_closed_form_values() {
        let k = cp2();
        assert_eq!(
            k.convolve(&nat(1), &nat(1)).unwrap(),
            measure(&[(0, rat(1, 4)), (2, rat(3, 4))])
        );
        assert_eq!(
            k.convolve(&nat(1), &nat(2)).unwrap(),
            measure(&[(1, rat(1, 3)), (3, rat(2, 3))])
        );
        for n in 0..8 {
            assert_eq!(
                k.convolve(&nat(0), &nat(n)).unwrap(),
                FiniteMeasure::point_mass(nat(n))
            );
        }
    }

    #[test]
    fn convolve_examples_from_bilinearity() {
        let k = cp1();
        let mu = measure(&[(1, rat(1, 2)), (5, rat(1, 2))]);
        let out = k.convolve_m(&mu, &FiniteMeasure::point_mass(nat(1))).unwrap();
        assert_eq!(
            out,
            measure(&[
                (0, rat(1, 4)),
                (2, rat(1, 4)),
                (4, rat(1, 4)),
                (6, rat(1, 4))
            ])
        );
    }

    #[test]
    fn sequence_folds() {
        let k = cp1();
        // (δ_2*δ_3)*δ_1 = ¼δ_0+¼δ_2+¼δ_4+¼δ_6.
        assert_eq!(
            k.convolve_sequence(&[nat(2), nat(3), nat(1)]).unwrap(),
            measure(&[
                (0, rat(1, 4)),
                (2, rat(1, 4)),
                (4, rat(1, 4)),
                (6, rat(1, 4))
            ])
        );
        // Raw fold with a repeated factor: (δ_1*δ_1)*δ_1 = (½δ_0+½δ_2)*δ_1.
        assert_eq!(
            k.convolve_sequence(&[nat(1), nat(1), nat(1)]).unwrap(),
            measure(&[(1, rat(3, 4)), (3, rat(1, 4))])
        );
    }

    #[test]
    fn axiom_windows_pass() {
        for k in [cp1(), cp2()] {
            let report = check_all(&k, &Window::nat_range(10)).unwrap();
            assert!(report.passed(), "{} failed:\n{report}", k.name());
        }
    }

    #[test]
    fn cp2_row_masses_are_one_by_construction() {
        // from_weights would reject anything else; touch a spread of pairs.
        let k = cp2();
        for m in 0..20u64 {
            for n in 0..20u64 {
                let mu = k.convolve_uncached(&nat(m), &nat(n)).unwrap();
                assert_eq!(mu.support_len() as u64, m.min(n) + 1);
            }
        }
    }
}
