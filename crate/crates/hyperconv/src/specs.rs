//! JSON construction and experiment specs.
//!
//! A construction spec is `{"builtin": NAME, "params": {...}}`; the params
//! may also sit at the top level.  Descriptors embed their own spec, so the
//! output of `construct` can be fed back in unchanged.

use crate::algebra::CarrierAlgebra;
use crate::axioms::Window;
use crate::carrier::{CarrierElement, CarrierKind};
use crate::constructions::{
    automorphism_orbit_hypergroup, coset_semiconvo, cp1, cp2, double_coset_hypergroup,
    dunkl_ramirez, klein_action_on_pairs, max_deformation, negate_first_action_on_mixed,
    orbit_semiconvo, polynomial_hypergroup, q1_degenerate_base, ross_quotient,
    semigroup_orbit_semiconvo, sign_action_on_int, swap_action_on_int_pairs,
    swap_action_on_nat_pairs, AffineAction, DeformationWeights, OrbitConstruction,
    QuotientConstruction,
};
use crate::error::{Error, Result};
use crate::hypergroup::HypergroupDescriptor;
use crate::polynomial::Recurrence;
use crate::ramsey::{Coloring, Criterion, SequenceCandidate};
use crate::rational::{parse_rat, Rat};
use serde_json::Value;
use std::sync::Arc;

/// A built construction; orbit and quotient builds keep their projection
/// data alongside the descriptor.
pub enum Built {
    Plain(Arc<HypergroupDescriptor>),
    Orbit(OrbitConstruction),
    Quotient(QuotientConstruction),
}

impl Built {
    pub fn descriptor(&self) -> &HypergroupDescriptor {
        match self {
            Built::Plain(k) => k,
            Built::Orbit(oc) => oc.descriptor(),
            Built::Quotient(qc) => qc.descriptor(),
        }
    }

    pub fn descriptor_arc(&self) -> Arc<HypergroupDescriptor> {
        match self {
            Built::Plain(k) => Arc::clone(k),
            Built::Orbit(oc) => oc.descriptor_arc(),
            Built::Quotient(qc) => qc.descriptor_arc(),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn params(spec: &Value) -> &Value {
    spec.get("params").unwrap_or(spec)
}

fn get_usize(p: &Value, key: &str, default: Option<usize>) -> Result<usize> {
    match p.get(key) {
        Some(v) => v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| bad(format!("\"{key}\" must be a non-negative integer, got {v}"))),
        None => default.ok_or_else(|| bad(format!("missing required parameter \"{key}\""))),
    }
}

fn get_str<'a>(p: &'a Value, key: &str) -> Result<&'a str> {
    p.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| bad(format!("missing required string parameter \"{key}\"")))
}

fn parse_rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => parse_rat(&n.to_string()),
        _ => Err(bad(format!("cannot read {v} as a rational"))),
    }
}

fn parse_weights(v: &Value) -> Result<DeformationWeights> {
    if let Some(name) = v.as_str() {
        if name == "2^n" {
            return Ok(DeformationWeights::powers_of_two());
        }
        if name == "1" {
            return Ok(DeformationWeights::ones());
        }
        if name == "q1-degenerate" {
            return Ok(DeformationWeights::q1_degenerate());
        }
        if let Some(a) = name.strip_prefix("dr:") {
            return DeformationWeights::dunkl_ramirez(parse_rat(a)?);
        }
        return Err(bad(format!(
            "unknown weight family {name:?}; expected \"2^n\", \"1\", \"q1-degenerate\", \"dr:A\", or a list"
        )));
    }
    if let Some(list) = v.as_array() {
        let values: Vec<Rat> = list.iter().map(parse_rat_value).collect::<Result<_>>()?;
        return Ok(DeformationWeights::from_list("list", values));
    }
    Err(bad(format!("cannot read {v} as deformation weights")))
}

fn parse_recurrence(name: &str) -> Result<Recurrence> {
    match name {
        "chebyshev_t" => Ok(Recurrence::chebyshev_t()),
        "chebyshev_u_normalized" => Ok(Recurrence::chebyshev_u_normalized()),
        other => Err(bad(format!(
            "unknown recurrence {other:?}; expected \"chebyshev_t\" or \"chebyshev_u_normalized\""
        ))),
    }
}

fn parse_base_algebra(name: &str) -> Result<CarrierAlgebra> {
    match name {
        "(Z,+)" | "int_add" => Ok(CarrierAlgebra::int_add()),
        "(ZxZ,+)" | "int_pair_add" => Ok(CarrierAlgebra::int_pair_add()),
        "(Z+,+)" | "non_neg_add" => Ok(CarrierAlgebra::non_neg_add()),
        "(Z+,max)" | "non_neg_max" => Ok(CarrierAlgebra::non_neg_max()),
        "(Z+xZ+,+)" | "nat_pair_add" => Ok(CarrierAlgebra::nat_pair_add()),
        "(ZxN)+e,mixed" | "mixed_zxn" => Ok(CarrierAlgebra::mixed_zxn()),
        "S3" | "s3" => Ok(CarrierAlgebra::symmetric_group3()),
        other => Err(bad(format!("unknown base algebra {other:?}"))),
    }
}

fn parse_action(name: &str, base: &CarrierAlgebra) -> Result<AffineAction> {
    match name {
        "sign" => Ok(sign_action_on_int()),
        "klein" => Ok(klein_action_on_pairs()),
        "negate-first" => Ok(negate_first_action_on_mixed()),
        // Two swap actions share a name; the base disambiguates.
        "swap" => match base.carrier_kind() {
            CarrierKind::NatPair => Ok(swap_action_on_nat_pairs()),
            CarrierKind::IntPair => Ok(swap_action_on_int_pairs()),
            other => Err(bad(format!("\"swap\" does not act on {}", other.name()))),
        },
        other => Err(bad(format!("unknown action {other:?}"))),
    }
}

fn parse_subgroup(g: &CarrierAlgebra, v: &Value) -> Result<Vec<CarrierElement>> {
    let list = v
        .as_array()
        .ok_or_else(|| bad("\"subgroup\" must be a list of element names"))?;
    list.iter()
        .map(|x| g.carrier_kind().parse_element(x))
        .collect()
}

/// Builds the construction a spec describes.
pub fn build_construction(spec: &Value) -> Result<Built> {
    let builtin = spec
        .get("builtin")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("construction spec needs a \"builtin\" name"))?;
    let p = params(spec);
    match builtin {
        "cp1" => Ok(Built::Plain(Arc::new(cp1()))),
        "cp2" => Ok(Built::Plain(Arc::new(cp2()))),
        "polynomial_hypergroup" => {
            let rec = parse_recurrence(get_str(p, "recurrence")?)?;
            let n_max = get_usize(p, "n_max", Some(30))?;
            Ok(Built::Plain(Arc::new(polynomial_hypergroup(&rec, n_max)?)))
        }
        "dunkl_ramirez" => {
            let a = parse_rat_value(
                p.get("a").ok_or_else(|| bad("missing required parameter \"a\""))?,
            )?;
            Ok(Built::Plain(Arc::new(dunkl_ramirez(a)?)))
        }
        "max_deformation" => {
            let v = parse_weights(
                p.get("v").ok_or_else(|| bad("missing required parameter \"v\""))?,
            )?;
            let n_max = get_usize(p, "n_max", None)?;
            Ok(Built::Plain(Arc::new(max_deformation(v, n_max)?)))
        }
        "orbit_semiconvo" | "automorphism_orbit_hypergroup" | "semigroup_orbit_semiconvo" => {
            let base = parse_base_algebra(get_str(p, "base")?)?;
            let action = parse_action(get_str(p, "action")?, &base)?;
            let oc = match builtin {
                "orbit_semiconvo" => orbit_semiconvo(&base, action)?,
                "automorphism_orbit_hypergroup" => automorphism_orbit_hypergroup(&base, action)?,
                _ => semigroup_orbit_semiconvo(&base, action)?,
            };
            Ok(Built::Orbit(oc))
        }
        "coset_semiconvo" | "double_coset_hypergroup" => {
            let g = parse_base_algebra(get_str(p, "group")?)?;
            let h = parse_subgroup(
                &g,
                p.get("subgroup")
                    .ok_or_else(|| bad("missing required parameter \"subgroup\""))?,
            )?;
            let k = if builtin == "coset_semiconvo" {
                coset_semiconvo(&g, &h)?
            } else {
                double_coset_hypergroup(&g, &h)?
            };
            Ok(Built::Plain(Arc::new(k)))
        }
        "ross_quotient" => {
            let n_max = get_usize(p, "n_max", Some(16))?;
            let base = Arc::new(q1_degenerate_base(n_max)?);
            let h: Vec<CarrierElement> = p
                .get("h")
                .or_else(|| p.get("subgroup"))
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing required parameter \"h\" (subgroup list)"))?
                .iter()
                .map(|x| base.carrier().parse_element(x))
                .collect::<Result<_>>()?;
            let window = Window::nat_range(get_usize(p, "window", Some(9))? as u64);
            Ok(Built::Quotient(ross_quotient(base, &h, &window)?))
        }
        other => Err(bad(format!("unknown builtin {other:?}"))),
    }
}

pub fn parse_criterion(v: &Value) -> Result<Criterion> {
    if let Some(s) = v.as_str() {
        return match s {
            "mono" => Ok(Criterion::Mono),
            "almost_mono" => Ok(Criterion::almost_mono()),
            other => Err(bad(format!("unknown criterion {other:?}"))),
        };
    }
    if let Some(obj) = v.as_object() {
        let kind = obj.get("kind").and_then(Value::as_str);
        if kind == Some("mono") {
            return Ok(Criterion::Mono);
        }
        if let Some(alpha) = obj.get("alpha") {
            return Ok(Criterion::AlphaMass(parse_rat_value(alpha)?));
        }
        if kind == Some("almost_mono") || obj.contains_key("max_index_budget") {
            return Ok(match obj.get("max_index_budget") {
                Some(b) => Criterion::AlmostMono {
                    max_index_budget: b
                        .as_u64()
                        .ok_or_else(|| bad("\"max_index_budget\" must be an integer"))?
                        as usize,
                },
                None => Criterion::almost_mono(),
            });
        }
    }
    Err(bad(format!("cannot read {v} as a criterion")))
}

/// Window for sweeps and searches: an integer bound, or an explicit element
/// list, or (for finite carriers) the whole carrier by default.
pub fn parse_window(
    v: Option<&Value>,
    k: &HypergroupDescriptor,
    override_max: Option<u64>,
) -> Result<Window> {
    if let Some(max) = override_max {
        if !matches!(k.carrier(), CarrierKind::NonNegInt) {
            return Err(bad(format!(
                "--window N only applies to Z+ carriers, not {}",
                k.carrier().name()
            )));
        }
        return Ok(Window::nat_range(max));
    }
    match v {
        Some(Value::Number(n)) => {
            let max = n
                .as_u64()
                .ok_or_else(|| bad(format!("window bound {n} is not a non-negative integer")))?;
            if !matches!(k.carrier(), CarrierKind::NonNegInt) {
                return Err(bad(format!(
                    "an integer window only applies to Z+ carriers, not {}",
                    k.carrier().name()
                )));
            }
            Ok(Window::nat_range(max))
        }
        Some(Value::Array(items)) => Window::new(
            items
                .iter()
                .map(|x| k.carrier().parse_element(x))
                .collect::<Result<_>>()?,
        ),
        Some(other) => Err(bad(format!("cannot read {other} as a window"))),
        None => match k.finite_carrier() {
            Some(elements) => Window::new(elements.to_vec()),
            None if matches!(k.carrier(), CarrierKind::NonNegInt) => Ok(Window::nat_range(12)),
            None => Err(bad(format!(
                "descriptor {} needs an explicit \"window\"",
                k.name()
            ))),
        },
    }
}

/// A fully resolved experiment: structure, coloring, criterion, bounds, and
/// optionally a fixed sequence to evaluate instead of searching.
pub struct ExperimentSpec {
    pub built: Built,
    pub coloring: Coloring,
    pub criterion: Criterion,
    pub depth: usize,
    pub window: Window,
    pub sequence: Option<SequenceCandidate>,
}

pub fn parse_experiment(
    spec: &Value,
    window_override: Option<u64>,
    depth_override: Option<usize>,
) -> Result<ExperimentSpec> {
    let built = build_construction(
        spec.get("structure")
            .ok_or_else(|| bad("experiment spec needs a \"structure\" construction"))?,
    )?;
    let coloring = Coloring::from_json(
        spec.get("coloring")
            .ok_or_else(|| bad("experiment spec needs a \"coloring\""))?,
        built.descriptor().carrier(),
    )?;
    let criterion = parse_criterion(
        spec.get("criterion")
            .ok_or_else(|| bad("experiment spec needs a \"criterion\""))?,
    )?;
    let depth = match depth_override {
        Some(d) => d,
        None => get_usize(spec, "depth", None)?,
    };
    let window = parse_window(spec.get("window"), built.descriptor(), window_override)?;
    let sequence = match spec.get("sequence") {
        Some(Value::Array(items)) => {
            let terms: Vec<CarrierElement> = items
                .iter()
                .map(|x| built.descriptor().carrier().parse_element(x))
                .collect::<Result<_>>()?;
            Some(SequenceCandidate::for_descriptor(
                terms,
                built.descriptor(),
            )?)
        }
        Some(other) => return Err(bad(format!("cannot read {other} as a sequence"))),
        None => None,
    };
    Ok(ExperimentSpec {
        built,
        coloring,
        criterion,
        depth,
        window,
        sequence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn builtins_round_trip_through_embedded_specs() {
        for spec in [
            json!({"builtin": "cp1"}),
            json!({"builtin": "cp2", "params": {}}),
            json!({"builtin": "dunkl_ramirez", "params": {"a": "1/3"}}),
            json!({"builtin": "max_deformation", "v": "2^n", "n_max": 12}),
            json!({"builtin": "automorphism_orbit_hypergroup",
                   "params": {"base": "(Z,+)", "action": "sign"}}),
            json!({"builtin": "double_coset_hypergroup",
                   "params": {"group": "s3", "subgroup": ["e", "(12)"]}}),
            json!({"builtin": "ross_quotient", "params": {"n_max": 12, "h": [0, 1]}}),
        ] {
            let built = build_construction(&spec).unwrap();
            // The descriptor's own embedded spec parses back to a build.
            if let Some(embedded) = built.descriptor().spec() {
                build_construction(embedded).unwrap();
            }
        }
    }

    #[test]
    fn inadmissible_weights_fail_with_the_named_condition() {
        let spec = json!({"builtin": "max_deformation", "v": "1", "n_max": 5});
        let err = build_construction(&spec).err().unwrap();
        assert_eq!(err.kind(), "WeightConditionViolated");
        assert!(err.to_string().contains("n = 2"), "{err}");
    }

    #[test]
    fn unknown_names_are_invalid_input() {
        for spec in [
            json!({"builtin": "cp9"}),
            json!({"no_builtin": true}),
            json!({"builtin": "max_deformation", "v": "3^n", "n_max": 4}),
            json!({"builtin": "polynomial_hypergroup", "recurrence": "legendre"}),
        ] {
            assert_eq!(
                build_construction(&spec).err().unwrap().kind(),
                "InvalidInput"
            );
        }
    }

    #[test]
    fn criterion_forms() {
        assert_eq!(parse_criterion(&json!("mono")).unwrap(), Criterion::Mono);
        assert_eq!(
            parse_criterion(&json!({"alpha": "1/3"})).unwrap(),
            Criterion::AlphaMass(crate::rational::rat(1, 3))
        );
        assert_eq!(
            parse_criterion(&json!("almost_mono")).unwrap(),
            Criterion::almost_mono()
        );
        assert_eq!(
            parse_criterion(&json!({"kind": "almost_mono", "max_index_budget": 4})).unwrap(),
            Criterion::AlmostMono {
                max_index_budget: 4
            }
        );
        assert!(parse_criterion(&json!("strict")).is_err());
    }

    #[test]
    fn experiment_spec_resolves_window_and_sequence() {
        let spec = json!({
            "structure": {"builtin": "cp2"},
            "coloring": {"kind": "mod_k", "k": 3},
            "criterion": "mono",
            "depth": 2,
            "window": 10,
            "sequence": [1, 2],
        });
        let ex = parse_experiment(&spec, None, None).unwrap();
        assert_eq!(ex.window.len(), 11);
        assert_eq!(ex.sequence.unwrap().len(), 2);
        assert_eq!(ex.depth, 2);
        // Overrides win over the spec body.
        let ex = parse_experiment(&spec, Some(5), Some(3)).unwrap();
        assert_eq!(ex.window.len(), 6);
        assert_eq!(ex.depth, 3);
    }

    #[test]
    fn finite_carriers_default_to_their_own_window() {
        let spec = json!({"builtin": "double_coset_hypergroup",
                          "params": {"group": "s3", "subgroup": ["e", "(12)"]}});
        let built = build_construction(&spec).unwrap();
        let w = parse_window(None, built.descriptor(), None).unwrap();
        // S₃//⟨(12)⟩ has the two double cosets H and H(23)H.
        assert_eq!(w.len(), 2);
    }
}
