//! Polynomial hypergroups: carriers ℤ₊ with δ_n*δ_m = Σ_k g(n,m;k)·δ_k,
//! where the g are the linearization coefficients of an orthogonal
//! polynomial system normalized by P_n(1) = 1.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use crate::hypergroup::{Claim, ConvolutionRule, HypergroupDescriptor};
use crate::measure::FiniteMeasure;
use crate::polynomial::{linearize, Recurrence};
use crate::rational::rat_to_string;
use num_traits::{Signed, Zero};
use serde_json::json;
use std::sync::Arc;

struct TableRule {
    table: Vec<Vec<FiniteMeasure>>,
}

impl ConvolutionRule for TableRule {
    fn convolve_points(&self, x: &CarrierElement, y: &CarrierElement) -> Result<FiniteMeasure> {
        let out_of_range = || Error::RuleDomain(x.clone(), y.clone());
        let m = x.as_nat().ok_or_else(out_of_range)? as usize;
        let n = y.as_nat().ok_or_else(out_of_range)? as usize;
        self.table
            .get(m)
            .and_then(|row| row.get(n))
            .cloned()
            .ok_or_else(out_of_range)
    }
}

/// Builds the convolution table of a polynomial system for 0 ≤ n, m ≤ n_max.
///
/// Every linearization coefficient is computed exactly and must be
/// nonnegative; a negative one names the offending (n, m, k) instead of being
/// clamped.  Normalization P_n(1) = 1 is inherited from
/// [`Recurrence::generate`] and makes every row a probability vector.
pub fn polynomial_hypergroup(rec: &Recurrence, n_max: usize) -> Result<HypergroupDescriptor> {
    let ps = rec.generate(2 * n_max)?;
    let mut table = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n_max + 1);
        for m in 0..=n_max {
            let g = linearize(&ps, n, m)?;
            let mut weights = Vec::new();
            for (k, coeff) in g.into_iter().enumerate() {
                if coeff.is_negative() {
                    return Err(Error::NegativeLinearization {
                        n,
                        m,
                        k,
                        value: rat_to_string(&coeff),
                    });
                }
                if !coeff.is_zero() {
                    weights.push((CarrierElement::Nat(k as u64), coeff));
                }
            }
            row.push(FiniteMeasure::from_weights(weights)?);
        }
        table.push(row);
    }

    Ok(HypergroupDescriptor::new(
        format!("poly({}, n_max={n_max})", rec.name()),
        CarrierKind::NonNegInt,
        CarrierElement::Nat(0),
        Arc::new(TableRule { table }),
    )
    .hermitian()
    .with_claim(Claim::Hypergroup)
    .with_spec(json!({
        "builtin": "polynomial_hypergroup",
        "params": {"recurrence": rec.name(), "n_max": n_max},
    })))
}

#[cfg(test)]
mod tests {
    use super::super::chebyshev::{cp1, cp2};
    use super::*;
    use crate::polynomial::Polynomial;
    use crate::rational::rat;

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    #[test]
    fn chebyshev_t_linearization_is_cp1() {
        let k = polynomial_hypergroup(&Recurrence::chebyshev_t(), 12).unwrap();
        let reference = cp1();
        for m in 0..=12u64 {
            for n in 0..=12u64 {
                assert_eq!(
                    k.convolve(&nat(m), &nat(n)).unwrap(),
                    reference.convolve(&nat(m), &nat(n)).unwrap(),
                    "({m},{n})"
                );
            }
        }
    }

    #[test]
    fn chebyshev_u_linearization_is_cp2() {
        let k = polynomial_hypergroup(&Recurrence::chebyshev_u_normalized(), 12).unwrap();
        let reference = cp2();
        for m in 0..=12u64 {
            for n in 0..=12u64 {
                assert_eq!(
                    k.convolve(&nat(m), &nat(n)).unwrap(),
                    reference.convolve(&nat(m), &nat(n)).unwrap(),
                    "({m},{n})"
                );
            }
        }
    }

    #[test]
    fn band_endpoints_carry_positive_mass() {
        for rec in [Recurrence::chebyshev_t(), Recurrence::chebyshev_u_normalized()] {
            let k = polynomial_hypergroup(&rec, 10).unwrap();
            for m in 0..=10u64 {
                for n in 0..=10u64 {
                    let mu = k.convolve(&nat(m), &nat(n)).unwrap();
                    assert!(!mu.weight(&nat(m.abs_diff(n))).is_zero());
                    assert!(!mu.weight(&nat(m + n)).is_zero());
                }
            }
        }
    }

    #[test]
    fn rule_is_bounded_by_n_max() {
        let k = polynomial_hypergroup(&Recurrence::chebyshev_t(), 4).unwrap();
        assert!(k.convolve(&nat(2), &nat(4)).is_ok());
        assert!(matches!(
            k.convolve(&nat(2), &nat(5)),
            Err(Error::RuleDomain(..))
        ));
    }

    #[test]
    fn negative_coefficient_is_named() {
        // a_n = c_n = 5/8, b_n = −1/4 keeps P_n(1) = 1 but drives
        // g(1,1;1) = −1/4 below zero.
        let rec = Recurrence::new(
            "negative-b",
            |_| rat(5, 8),
            |_| rat(-1, 4),
            |_| rat(5, 8),
            Polynomial::x(),
        );
        let err = polynomial_hypergroup(&rec, 2).unwrap_err();
        match err {
            Error::NegativeLinearization { n, m, k, value } => {
                assert_eq!((n, m, k), (1, 1, 1));
                assert_eq!(value, "-1/4");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn broken_normalization_is_rejected() {
        let rec = Recurrence::new(
            "unnormalized",
            |_| rat(1, 2),
            |_| rat(0, 1),
            |_| rat(1, 2),
            Polynomial::from_coeffs(vec![rat(0, 1), rat(2, 1)]),
        );
        assert!(matches!(
            polynomial_hypergroup(&rec, 3),
            Err(Error::Normalization(..))
        ));
    }
}
