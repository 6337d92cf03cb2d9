//! The Dunkl–Ramirez hypergroups on ℤ₊, parametrized by 0 < a ≤ ½.

use crate::carrier::{CarrierElement, CarrierKind};
use crate::error::{Error, Result};
use crate::hypergroup::{Claim, FnRule, HypergroupDescriptor};
use crate::measure::FiniteMeasure;
use crate::rational::{rat, rat_to_string, Rat};
use num_traits::One;
use serde_json::json;
use std::sync::Arc;

/// δ_m*δ_n = δ_{max{m,n}} off the diagonal; on the diagonal (n ≥ 1)
/// δ_n*δ_n = aⁿ/(1−a)·δ_0 + Σ_{k=1}^{n−1} a^{n−k}·δ_k + (1−2a)/(1−a)·δ_n.
pub fn dunkl_ramirez(a: Rat) -> Result<HypergroupDescriptor> {
    if a <= Rat::from_integer(0.into()) || a > rat(1, 2) {
        return Err(Error::ParamRange(format!(
            "dunkl_ramirez needs 0 < a <= 1/2, got {}",
            rat_to_string(&a)
        )));
    }
    let spec = json!({"builtin": "dunkl_ramirez", "params": {"a": rat_to_string(&a)}});
    let name = format!("dunkl_ramirez({})", rat_to_string(&a));
    let rule = move |x: &CarrierElement, y: &CarrierElement| -> Result<FiniteMeasure> {
        let m = x
            .as_nat()
            .ok_or_else(|| Error::OutsideCarrier(x.clone(), "dunkl_ramirez".into()))?;
        let n = y
            .as_nat()
            .ok_or_else(|| Error::OutsideCarrier(y.clone(), "dunkl_ramirez".into()))?;
        if m != n || n == 0 {
            return Ok(FiniteMeasure::point_mass(CarrierElement::Nat(m.max(n))));
        }
        let one_minus_a = Rat::one() - &a;
        let mut weights = Vec::with_capacity(n as usize + 1);
        // a^{n−k} accumulated from k = n−1 down to 0 so each step is one mul.
        let mut pow = Rat::one();
        let mut tail = Vec::new();
        for k in (0..n).rev() {
            pow *= &a;
            if k == 0 {
                tail.push((CarrierElement::Nat(0), &pow / &one_minus_a));
            } else {
                tail.push((CarrierElement::Nat(k), pow.clone()));
            }
        }
        weights.push((
            CarrierElement::Nat(n),
            (Rat::one() - &a - &a) / &one_minus_a,
        ));
        weights.extend(tail);
        FiniteMeasure::from_weights(weights)
    };
    Ok(HypergroupDescriptor::new(
        name,
        CarrierKind::NonNegInt,
        CarrierElement::Nat(0),
        Arc::new(FnRule(rule)),
    )
    .hermitian()
    .with_claim(Claim::Hypergroup)
    .with_spec(spec))
}
