//! Standard and canonical forms of step multisets.
//!
//! Multiplying every step by a unit `a` of `Z_n` relabels `v ↦ a·v` and gives
//! an isomorphic graph. The canonical form is the lexicographically least
//! standard form over all such multiples. Equal canonical forms prove
//! isomorphism; distinct ones do not disprove it.

use serde::Serialize;

use crate::arith::{mul_mod, units};
use crate::graph::{fold_step, GiSpec, SpecError};

/// Folds each step into `(0, n/2)` and sorts.
pub fn standard_form(n: u32, steps: &[i64]) -> Result<Vec<u32>, SpecError> {
    let mut out = steps
        .iter()
        .map(|&j| fold_step(n, j))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    Ok(out)
}

/// Standard form of `a·J` for an already-valid step multiset.
pub fn scaled_standard(n: u32, steps: &[u32], a: u32) -> Vec<u32> {
    let mut out: Vec<u32> = steps
        .iter()
        .map(|&j| {
            let x = mul_mod(a, j, n);
            x.min(n - x)
        })
        .collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: u32,
    #[serde(rename = "J")]
    pub steps: Vec<u32>,
    pub witness_unit: u32,
}

impl CanonicalForm {
    pub fn spec(&self) -> GiSpec {
        GiSpec::from_steps(self.n, &self.steps).expect("canonical steps are valid")
    }
}

pub fn canonical_form(spec: &GiSpec) -> CanonicalForm {
    let n = spec.n();
    let mut best = spec.steps().to_vec();
    let mut witness = 1;
    // units ascend, so a strict improvement keeps the smallest witness on ties
    for a in units(n).iter() {
        let cand = scaled_standard(n, spec.steps(), a);
        if cand < best {
            best = cand;
            witness = a;
        }
    }
    CanonicalForm {
        n,
        steps: best,
        witness_unit: witness,
    }
}

/// Sufficient test for isomorphism: same `n`, same `t`, same canonical form.
pub fn equivalent(a: &GiSpec, b: &GiSpec) -> bool {
    a.n() == b.n() && a.t() == b.t() && canonical_form(a).steps == canonical_form(b).steps
}
