//! Windowed axiom verification.
//!
//! Carriers are infinite, so every check here is exhaustive over a finite
//! caller-chosen window and the report names that window.  Exact measure
//! equality is the only comparison used; a failed check always carries the
//! first counterexample in lexicographic window order.

use crate::algebra::CarrierAlgebra;
use crate::carrier::CarrierElement;
use crate::error::{Error, Result};
use crate::hypergroup::HypergroupDescriptor;
use crate::measure::FiniteMeasure;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt;

/// Finite ordered slice of a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    elements: Vec<CarrierElement>,
}

impl Window {
    pub fn new(elements: Vec<CarrierElement>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidInput(format!(
                    "window contains {e} twice"
                )));
            }
        }
        Ok(Window { elements })
    }

    /// `{0, 1, …, max}` on the ℤ₊ carrier.
    pub fn nat_range(max: u64) -> Self {
        Window {
            elements: (0..=max).map(CarrierElement::Nat).collect(),
        }
    }

    pub fn elements(&self) -> &[CarrierElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &CarrierElement) -> bool {
        self.elements.contains(x)
    }

    pub fn describe(&self) -> String {
        match (self.elements.first(), self.elements.last()) {
            (Some(a), Some(b)) if self.elements.len() > 4 => {
                format!("{{{a},…,{b}}} ({} elements)", self.elements.len())
            }
            _ => format!(
                "{{{}}}",
                self.elements
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub elements: Vec<CarrierElement>,
    /// Exact mismatch, e.g. the two measures that should have agreed.
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    /// How many instances (pairs, triples, …) the check covered.
    pub cases: usize,
}

impl AxiomCheck {
    pub fn pass(axiom: &str, cases: usize) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            passed: true,
            counterexample: None,
            cases,
        }
    }

    pub fn fail(axiom: &str, cases: usize, cx: Counterexample) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            passed: false,
            counterexample: Some(cx),
            cases,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub window: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": self.window,
            "passed": self.passed(),
            "checks": self
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "axiom": c.axiom,
                        "passed": c.passed,
                        "cases": c.cases,
                        "counterexample": c.counterexample.as_ref().map(|cx| {
                            json!({
                                "elements": cx
                                    .elements
                                    .iter()
                                    .map(|e| e.to_json())
                                    .collect::<Vec<_>>(),
                                "detail": cx.detail,
                            })
                        }),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "window {}", self.window)?;
        for c in &self.checks {
            write!(
                f,
                "  {:<32} {} ({} cases)",
                c.axiom,
                if c.passed { "pass" } else { "FAIL" },
                c.cases
            )?;
            if let Some(cx) = &c.counterexample {
                let at = cx
                    .elements
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(f, " at ({at}): {}", cx.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// (δ_x*δ_y)*δ_z = δ_x*(δ_y*δ_z) over every triple of the window.
pub fn check_associativity(k: &HypergroupDescriptor, w: &Window) -> Result<AxiomReport> {
    let n = w.len();
    let cases = n * n * n;
    let mut check = AxiomCheck::pass("associativity", cases);
    'outer: for x in w.elements() {
        for y in w.elements() {
            let xy = k.convolve(x, y)?;
            for z in w.elements() {
                let left = k.convolve_m(&xy, &FiniteMeasure::point_mass(z.clone()))?;
                let yz = k.convolve(y, z)?;
                let right = k.convolve_m(&FiniteMeasure::point_mass(x.clone()), &yz)?;
                if left != right {
                    check = AxiomCheck::fail(
                        "associativity",
                        cases,
                        Counterexample {
                            elements: vec![x.clone(), y.clone(), z.clone()],
                            detail: format!("(x*y)*z = {left} but x*(y*z) = {right}"),
                        },
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(AxiomReport {
        window: w.describe(),
        checks: vec![check],
    })
}

/// δ_e*δ_x = δ_x*δ_e = δ_x over the window; the identity must sit in the window.
pub fn check_identity(k: &HypergroupDescriptor, w: &Window) -> Result<AxiomReport> {
    let e = k.identity();
    let mut checks = Vec::new();
    if !w.contains(e) {
        checks.push(AxiomCheck::fail(
            "identity-in-window",
            1,
            Counterexample {
                elements: vec![e.clone()],
                detail: format!("identity {e} missing from the window"),
            },
        ));
        return Ok(AxiomReport {
            window: w.describe(),
            checks,
        });
    }
    let cases = 2 * w.len();
    let mut check = AxiomCheck::pass("identity", cases);
    for x in w.elements() {
        let expected = FiniteMeasure::point_mass(x.clone());
        let left = k.convolve(e, x)?;
        let right = k.convolve(x, e)?;
        if left != expected || right != expected {
            check = AxiomCheck::fail(
                "identity",
                cases,
                Counterexample {
                    elements: vec![x.clone()],
                    detail: format!("e*x = {left}, x*e = {right}, expected {expected}"),
                },
            );
            break;
        }
    }
    checks.push(check);
    Ok(AxiomReport {
        window: w.describe(),
        checks,
    })
}

/// The three involution conditions over the window: self-inverse,
/// (δ_x*δ_y)ˇ = δ_y̌*δ_x̌, and e ∈ spt(δ_x*δ_y̌) ⇔ x = y.
pub fn check_involution(k: &HypergroupDescriptor, w: &Window) -> Result<AxiomReport> {
    if k.involution().is_none() {
        return Err(Error::NoInvolution);
    }
    let n = w.len();
    let mut checks = Vec::new();

    let mut self_inv = AxiomCheck::pass("involution-self-inverse", n);
    for x in w.elements() {
        let xv = k.involute(x)?;
        let back = k.involute(&xv)?;
        if back != *x {
            self_inv = AxiomCheck::fail(
                "involution-self-inverse",
                n,
                Counterexample {
                    elements: vec![x.clone()],
                    detail: format!("xˇ = {xv}, xˇˇ = {back} ≠ x"),
                },
            );
            break;
        }
    }
    checks.push(self_inv);

    let cases = n * n;
    let mut anti = AxiomCheck::pass("involution-antihomomorphism", cases);
    'anti: for x in w.elements() {
        for y in w.elements() {
            let lhs = k.involute_measure(&k.convolve(x, y)?)?;
            let rhs = k.convolve(&k.involute(y)?, &k.involute(x)?)?;
            if lhs != rhs {
                anti = AxiomCheck::fail(
                    "involution-antihomomorphism",
                    cases,
                    Counterexample {
                        elements: vec![x.clone(), y.clone()],
                        detail: format!("(x*y)ˇ = {lhs} but yˇ*xˇ = {rhs}"),
                    },
                );
                break 'anti;
            }
        }
    }
    checks.push(anti);

    let e = k.identity();
    let mut support = AxiomCheck::pass("involution-identity-support", cases);
    'supp: for x in w.elements() {
        for y in w.elements() {
            let mu = k.convolve(x, &k.involute(y)?)?;
            let has_e = mu.weight(e) != crate::rational::rat(0, 1);
            if has_e != (x == y) {
                support = AxiomCheck::fail(
                    "involution-identity-support",
                    cases,
                    Counterexample {
                        elements: vec![x.clone(), y.clone()],
                        detail: format!(
                            "e ∈ spt(x*yˇ) is {has_e} but x = y is {}; x*yˇ = {mu}",
                            x == y
                        ),
                    },
                );
                break 'supp;
            }
        }
    }
    checks.push(support);

    Ok(AxiomReport {
        window: w.describe(),
        checks,
    })
}

/// Runs all applicable axiom checks and concatenates the reports.
pub fn check_all(k: &HypergroupDescriptor, w: &Window) -> Result<AxiomReport> {
    let mut checks = check_identity(k, w)?.checks;
    checks.extend(check_associativity(k, w)?.checks);
    if k.involution().is_some() {
        checks.extend(check_involution(k, w)?.checks);
    }
    Ok(AxiomReport {
        window: w.describe(),
        checks,
    })
}

/// Windowed center: {x ∈ w : spt(δ_x*δ_y) is a singleton for every y ∈ w}.
/// Over-approximates Z(K); membership is window-relative only.
pub fn center(k: &HypergroupDescriptor, w: &Window) -> Result<Vec<CarrierElement>> {
    let mut out = Vec::new();
    'next: for x in w.elements() {
        for y in w.elements() {
            if k.convolve(x, y)?.support_len() != 1 {
                continue 'next;
            }
        }
        out.push(x.clone());
    }
    Ok(out)
}

/// Outcome of the idempotent-power probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    /// Least j ≤ bound with x^j idempotent.
    IdempotentPowerAt(u32),
    /// No power up to the bound is idempotent.
    InfiniteUpTo(u32),
}

/// Finds the least j ≤ bound with x^j idempotent.
pub fn element_order(s: &CarrierAlgebra, x: &CarrierElement, bound: u32) -> Result<OrderResult> {
    if bound < 1 {
        return Err(Error::ParamRange("element_order requires bound >= 1".into()));
    }
    let mut power = x.clone();
    for j in 1..=bound {
        if j > 1 {
            power = s.op(&power, x)?;
        }
        if s.is_idempotent(&power)? {
            return Ok(OrderResult::IdempotentPowerAt(j));
        }
    }
    Ok(OrderResult::InfiniteUpTo(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::CarrierKind;
    use crate::hypergroup::{FnRule, Involution};
    use std::sync::Arc;

    fn nat(n: u64) -> CarrierElement {
        CarrierElement::Nat(n)
    }

    fn shift() -> HypergroupDescriptor {
        let rule = FnRule(|x: &CarrierElement, y: &CarrierElement| {
            Ok(FiniteMeasure::point_mass(nat(
                x.as_nat().unwrap() + y.as_nat().unwrap(),
            )))
        });
        HypergroupDescriptor::new("shift", CarrierKind::NonNegInt, nat(0), Arc::new(rule))
    }

    /// Left projection δ_x*δ_y := δ_x is associative but has no identity.
    fn left_projection() -> HypergroupDescriptor {
        let rule = FnRule(|x: &CarrierElement, _: &CarrierElement| {
            Ok(FiniteMeasure::point_mass(x.clone()))
        });
        HypergroupDescriptor::new("proj", CarrierKind::NonNegInt, nat(0), Arc::new(rule))
    }

    #[test]
    fn window_rejects_duplicates() {
        assert!(Window::new(vec![nat(1), nat(1)]).is_err());
        assert_eq!(Window::nat_range(3).len(), 4);
    }

    #[test]
    fn projection_is_associative_but_identity_fails() {
        let k = left_projection();
        let w = Window::nat_range(5);
        assert!(check_associativity(&k, &w).unwrap().passed());
        let id = check_identity(&k, &w).unwrap();
        assert!(!id.passed());
        // e*x = δ_e ≠ δ_x for x ≠ e: the counterexample names x = 1.
        let cx = id.checks[0].counterexample.as_ref().unwrap();
        assert_eq!(cx.elements, vec![nat(1)]);
    }

    #[test]
    fn identity_missing_from_window_is_a_failure_entry() {
        let k = shift();
        let w = Window::new(vec![nat(1), nat(2)]).unwrap();
        let report = check_identity(&k, &w).unwrap();
        assert!(!report.passed());
        assert_eq!(report.checks[0].axiom, "identity-in-window");
    }

    #[test]
    fn shift_passes_identity_and_associativity() {
        let k = shift();
        let w = Window::nat_range(6);
        assert!(check_identity(&k, &w).unwrap().passed());
        assert!(check_associativity(&k, &w).unwrap().passed());
    }

    #[test]
    fn broken_involution_fails_self_inverse() {
        // m̌ := m+1 is not self-inverse.
        let k = shift().with_involution(Involution::Map {
            label: "shift-up".into(),
            map: Arc::new(|x: &CarrierElement| Ok(nat(x.as_nat().unwrap() + 1))),
        });
        let w = Window::nat_range(4);
        let report = check_involution(&k, &w).unwrap();
        assert!(!report.passed());
        assert_eq!(report.checks[0].axiom, "involution-self-inverse");
        assert!(!report.checks[0].passed);
    }

    #[test]
    fn involution_requires_presence() {
        let k = shift();
        assert!(matches!(
            check_involution(&k, &Window::nat_range(2)),
            Err(Error::NoInvolution)
        ));
    }

    #[test]
    fn shift_with_identity_involution_fails_support_condition() {
        // δ_x*δ_x = δ_{2x} never returns to e for x ≥ 1, so (ℤ₊,+) as a
        // "hermitian" structure violates the support axiom — it is a
        // semigroup, not a hypergroup.
        let k = shift().hermitian();
        let w = Window::nat_range(4);
        let report = check_involution(&k, &w).unwrap();
        let support = report
            .checks
            .iter()
            .find(|c| c.axiom == "involution-identity-support")
            .unwrap();
        assert!(!support.passed);
    }

    #[test]
    fn center_of_point_mass_rule_is_whole_window() {
        let k = shift();
        let w = Window::nat_range(8);
        assert_eq!(center(&k, &w).unwrap(), w.elements().to_vec());
    }

    #[test]
    fn element_order_examples() {
        let add = CarrierAlgebra::non_neg_add();
        assert_eq!(
            element_order(&add, &nat(1), 50).unwrap(),
            OrderResult::InfiniteUpTo(50)
        );
        let max = CarrierAlgebra::non_neg_max();
        assert_eq!(
            element_order(&max, &nat(7), 5).unwrap(),
            OrderResult::IdempotentPowerAt(1)
        );
        let sk = CarrierAlgebra::sk(3).unwrap();
        assert_eq!(
            element_order(&sk, &nat(1), 10).unwrap(),
            OrderResult::IdempotentPowerAt(3)
        );
    }
}
