//! Edge-transitivity, vertex-transitivity and the Cayley property.
//!
//! Edge-transitive connected GI-graphs are exactly the eight sporadic ones.
//! A connected GI-graph with at least two layers is vertex-transitive iff,
//! after scaling so that 1 is a step, all steps are units with a common
//! multiplicity `k0` and the underlying set `J0 ∪ −J0` is a subgroup of
//! `Z_n^*` (plus the sporadic `GI(10;1,2)`). Such a graph is Cayley iff
//! the subgroup has an index-2 subgroup avoiding `−1`, or `k0` is even.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{has_index2_excluding, inv_mod, is_mult_subgroup, is_unit, mult_closure, neg_mod};
use crate::autgroup::{aut_order, sporadic_entry, AutOrderReport};
use crate::canon::{canonical_form, scaled_standard, CanonicalForm};
use crate::graph::{components, GiSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VtDecomposition {
    pub k0: u32,
    #[serde(rename = "J0")]
    pub j0: Vec<u32>,
    pub scaling_unit: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Error)]
pub enum NotDecomposable {
    #[error("some step is not a unit mod n")]
    NonUnitStep,
    #[error("steps occur with unequal multiplicities")]
    UnequalMultiplicities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
    UnknownDisconnected,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::UnknownDisconnected => "UnknownDisconnected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub value: bool,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyDecision {
    pub verdict: Verdict,
    pub rule: String,
}

fn decision(value: bool, rule: impl Into<String>) -> Decision {
    Decision {
        value,
        rule: rule.into(),
    }
}

fn cayley(verdict: Verdict, rule: impl Into<String>) -> CayleyDecision {
    CayleyDecision {
        verdict,
        rule: rule.into(),
    }
}

pub fn is_edge_transitive(spec: &GiSpec) -> Decision {
    if spec.t() == 1 {
        return decision(true, "single layer: disjoint union of cycles");
    }
    let (d, component) = components(spec);
    if d > 1 {
        let inner = is_edge_transitive(&component);
        return decision(
            inner.value,
            format!("disjoint copies of the component: {}", inner.rule),
        );
    }
    if sporadic_entry(spec).is_some() {
        decision(true, "canonical form is one of the eight edge-transitive graphs")
    } else {
        decision(false, "connected and not one of the eight edge-transitive graphs")
    }
}

fn decompose_with(spec: &GiSpec, a: u32) -> Result<VtDecomposition, NotDecomposable> {
    let scaled = scaled_standard(spec.n(), spec.steps(), a);
    let mut classes: Vec<(u32, u32)> = Vec::new();
    for j in scaled {
        match classes.last_mut() {
            Some((last, m)) if *last == j => *m += 1,
            _ => classes.push((j, 1)),
        }
    }
    let k0 = classes[0].1;
    if classes.iter().any(|&(_, m)| m != k0) {
        return Err(NotDecomposable::UnequalMultiplicities);
    }
    Ok(VtDecomposition {
        k0,
        j0: classes.into_iter().map(|(j, _)| j).collect(),
        scaling_unit: a,
    })
}

/// Writes `J` as `[k0]J0` after scaling by the inverse of the least step.
pub fn vt_decomposition(spec: &GiSpec) -> Result<VtDecomposition, NotDecomposable> {
    let n = spec.n();
    if spec.steps().iter().any(|&j| !is_unit(j, n)) {
        return Err(NotDecomposable::NonUnitStep);
    }
    let a = inv_mod(spec.steps()[0], n).expect("unit step");
    decompose_with(spec, a)
}

fn symmetric_closure(n: u32, j0: &[u32]) -> Vec<u32> {
    let mut all: Vec<u32> = j0.iter().flat_map(|&j| [j, neg_mod(j, n)]).collect();
    all.sort_unstable();
    all.dedup();
    all
}

fn decomposition_is_vt(spec: &GiSpec, dec: &VtDecomposition) -> bool {
    is_mult_subgroup(spec.n(), &symmetric_closure(spec.n(), &dec.j0))
}

pub fn is_vertex_transitive(spec: &GiSpec) -> Decision {
    if spec.t() == 1 {
        return decision(true, "single layer: disjoint union of cycles");
    }
    let (d, component) = components(spec);
    if d > 1 {
        let inner = is_vertex_transitive(&component);
        return decision(
            inner.value,
            format!("disjoint copies of the component: {}", inner.rule),
        );
    }
    if sporadic_entry(spec).is_some() {
        return decision(true, "sporadic edge-transitive graph");
    }
    let out = match vt_decomposition(spec) {
        Err(NotDecomposable::NonUnitStep) => decision(false, "some step is not a unit mod n"),
        Err(NotDecomposable::UnequalMultiplicities) => {
            decision(false, "steps of J ∪ −J occur with unequal multiplicities")
        }
        Ok(dec) if decomposition_is_vt(spec, &dec) => {
            decision(true, "equal multiplicities and J0 ∪ −J0 is a subgroup of units")
        }
        Ok(_) => decision(false, "J0 ∪ −J0 is not a subgroup of units"),
    };
    if cfg!(debug_assertions) && out.value {
        // every step's inverse scales to the same verdict
        for &j in spec.steps() {
            let a = inv_mod(j, spec.n()).unwrap();
            let alt = decompose_with(spec, a).map(|dec| decomposition_is_vt(spec, &dec));
            debug_assert_eq!(alt, Ok(true), "scaling by {a} disagrees");
        }
    }
    out
}

pub fn is_cayley(spec: &GiSpec) -> CayleyDecision {
    let out = cayley_inner(spec);
    debug_assert!(out.verdict != Verdict::Yes || is_vertex_transitive(spec).value);
    out
}

fn cayley_inner(spec: &GiSpec) -> CayleyDecision {
    if !is_vertex_transitive(spec).value {
        return cayley(Verdict::No, "not vertex-transitive");
    }
    if spec.t() == 1 {
        return cayley(Verdict::Yes, "single layer: cycles are circulants");
    }
    let (d, component) = components(spec);
    if d > 1 {
        let inner = is_cayley(&component);
        return if inner.verdict == Verdict::Yes {
            cayley(
                Verdict::Yes,
                format!("disjoint copies of a Cayley graph: {}", inner.rule),
            )
        } else {
            cayley(
                Verdict::UnknownDisconnected,
                "disjoint copies of a vertex-transitive non-Cayley graph",
            )
        };
    }
    let n = spec.n();
    let dec = match vt_decomposition(spec) {
        Ok(dec) => dec,
        Err(_) => return cayley(Verdict::No, "vertex-transitive without a unit decomposition"),
    };
    let h = mult_closure(n, &symmetric_closure(n, &dec.j0)).expect("units");
    let base = has_index2_excluding(n, &h, n - 1)
        .expect("closure is a subgroup")
        .is_some();
    match (dec.k0, base) {
        (_, true) => cayley(
            Verdict::Yes,
            "J0 ∪ −J0 has an index-2 subgroup not containing −1",
        ),
        (k, false) if k % 2 == 0 => cayley(Verdict::Yes, "even number of copies of J0"),
        (1, false) => cayley(
            Verdict::No,
            "every index-2 subgroup of J0 ∪ −J0 contains −1",
        ),
        _ => cayley(
            Verdict::No,
            "odd number of copies of a non-Cayley base graph",
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub spec: GiSpec,
    pub canonical: CanonicalForm,
    pub connected: bool,
    pub d: u32,
    pub component: GiSpec,
    pub edge_transitive: Decision,
    pub vertex_transitive: Decision,
    pub cayley: CayleyDecision,
    pub aut_order: AutOrderReport,
}

pub fn classify(spec: &GiSpec) -> ClassificationReport {
    let (d, component) = components(spec);
    let report = ClassificationReport {
        spec: spec.clone(),
        canonical: canonical_form(spec),
        connected: d == 1,
        d,
        component,
        edge_transitive: is_edge_transitive(spec),
        vertex_transitive: is_vertex_transitive(spec),
        cayley: is_cayley(spec),
        aut_order: aut_order(spec),
    };
    if report.connected && sporadic_entry(spec).is_some() {
        assert!(report.edge_transitive.value && report.vertex_transitive.value);
    }
    report
}
