//! Enumeration of GI-graphs by canonical class, with optional oracle checks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::autgroup::aut_order;
use crate::canon::canonical_form;
use crate::classify::{classify, Verdict};
use crate::graph::{build, GiSpec};
use crate::oracle::{
    brute_aut, edge_orbits, find_regular_subgroup, is_isomorphic, vertex_orbits, OracleConfig,
    OracleError,
};

/// Largest number of step multisets a single census will enumerate.
pub const MAX_SPECS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census would enumerate more than {cap} step multisets")]
    CapExceeded { cap: usize },
    #[error("need 3 <= n_min <= n_max and t >= 1")]
    BadRange,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub n_min: u32,
    pub n_max: u32,
    pub t: usize,
    pub connected_only: bool,
    pub verify: bool,
    pub oracle: OracleConfig,
}

/// Oracle results for one census row. Fields are `None` when the graph or
/// group was beyond the oracle caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub oracle_order: Option<u128>,
    pub oracle_vt: Option<bool>,
    pub oracle_et: Option<bool>,
    pub oracle_cayley: Option<bool>,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: u32,
    pub t: usize,
    /// The class representative, which is its canonical form.
    #[serde(rename = "J")]
    pub steps: Vec<u32>,
    pub class_size: usize,
    pub d: u32,
    pub order: u128,
    pub case: &'static str,
    pub edge_transitive: bool,
    pub vertex_transitive: bool,
    pub cayley: Verdict,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<RowCheck>,
}

/// Two rows with distinct canonical forms whose graphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub n: u32,
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub findings: Vec<Finding>,
    pub mismatches: usize,
}

fn multiset_count(n: u32, t: usize) -> usize {
    // multisets of size t drawn from (n - 1)/2 values
    let k = ((n - 1) / 2) as usize;
    if k == 0 {
        return 0;
    }
    let mut c: f64 = 1.0;
    for i in 0..t {
        c = c * (k + i) as f64 / (i + 1) as f64;
    }
    c.round() as usize
}

/// All sorted step multisets of size `t` with `0 < j < n/2`.
pub fn standard_multisets(n: u32, t: usize) -> Vec<Vec<u32>> {
    let max = (n - 1) / 2;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(max: u32, t: usize, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for j in lo..=max {
            cur.push(j);
            rec(max, t, j, cur, out);
            cur.pop();
        }
    }
    if t > 0 {
        rec(max, t, 1, &mut cur, &mut out);
    }
    out
}

pub fn run(opts: &CensusOptions) -> Result<Census, CensusError> {
    if opts.n_min < 3 || opts.n_min > opts.n_max || opts.t == 0 {
        return Err(CensusError::BadRange);
    }
    let total: usize = (opts.n_min..=opts.n_max)
        .map(|n| multiset_count(n, opts.t))
        .sum();
    if total > MAX_SPECS {
        return Err(CensusError::CapExceeded { cap: MAX_SPECS });
    }
    let mut classes: BTreeMap<(u32, Vec<u32>), usize> = BTreeMap::new();
    for n in opts.n_min..=opts.n_max {
        for steps in standard_multisets(n, opts.t) {
            let spec = GiSpec::from_steps(n, &steps).expect("standard steps are valid");
            if opts.connected_only && !spec.is_connected() {
                continue;
            }
            *classes.entry((n, canonical_form(&spec).steps)).or_default() += 1;
        }
    }
    let classes: Vec<((u32, Vec<u32>), usize)> = classes.into_iter().collect();
    let rows: Vec<CensusRow> = classes
        .par_iter()
        .map(|((n, steps), size)| make_row(*n, steps, *size, opts))
        .collect();
    let findings = if opts.verify {
        find_collisions(&rows, &opts.oracle)
    } else {
        Vec::new()
    };
    let mismatches = rows
        .iter()
        .filter_map(|r| r.check.as_ref())
        .map(|c| c.mismatches.len())
        .sum();
    Ok(Census {
        rows,
        findings,
        mismatches,
    })
}

fn make_row(n: u32, steps: &[u32], class_size: usize, opts: &CensusOptions) -> CensusRow {
    let spec = GiSpec::from_steps(n, steps).expect("canonical steps are valid");
    let report = classify(&spec);
    let rule = format!(
        "ET: {}; VT: {}; Cayley: {}",
        report.edge_transitive.rule, report.vertex_transitive.rule, report.cayley.rule
    );
    let mut row = CensusRow {
        n,
        t: spec.t(),
        steps: steps.to_vec(),
        class_size,
        d: report.d,
        order: report.aut_order.order,
        case: report.aut_order.case.name(),
        edge_transitive: report.edge_transitive.value,
        vertex_transitive: report.vertex_transitive.value,
        cayley: report.cayley.verdict,
        rule,
        check: None,
    };
    if opts.verify {
        row.check = Some(check_spec(&spec, &opts.oracle));
    }
    row
}

/// Compares every closed-form claim about `spec` with the oracle.
pub fn check_spec(spec: &GiSpec, cfg: &OracleConfig) -> RowCheck {
    let mut check = RowCheck {
        oracle_order: None,
        oracle_vt: None,
        oracle_et: None,
        oracle_cayley: None,
        mismatches: Vec::new(),
    };
    let graph = build(spec);
    let mut group = match brute_aut(&graph, cfg) {
        Ok(g) => g,
        Err(_) => return check,
    };
    let report = classify(spec);
    let order = group.order();
    let vt = vertex_orbits(&group).len() == 1;
    let et = edge_orbits(&group, &graph).len() == 1;
    check.oracle_order = Some(order);
    check.oracle_vt = Some(vt);
    check.oracle_et = Some(et);
    if order != aut_order(spec).order {
        check
            .mismatches
            .push(format!("order {} vs oracle {}", report.aut_order.order, order));
    }
    if vt != report.vertex_transitive.value {
        check.mismatches.push(format!("VT {} vs oracle {vt}", report.vertex_transitive.value));
    }
    if et != report.edge_transitive.value {
        check.mismatches.push(format!("ET {} vs oracle {et}", report.edge_transitive.value));
    }
    if vt {
        match find_regular_subgroup(&mut group, cfg) {
            Ok(found) => {
                let oracle = found.is_some();
                check.oracle_cayley = Some(oracle);
                let claimed = match report.cayley.verdict {
                    Verdict::Yes => Some(true),
                    Verdict::No => Some(false),
                    Verdict::UnknownDisconnected => None,
                };
                if claimed.is_some_and(|c| c != oracle) {
                    check.mismatches.push(format!(
                        "Cayley {} vs oracle {oracle}",
                        report.cayley.verdict.as_str()
                    ));
                }
            }
            Err(OracleError::CapExceeded { .. } | OracleError::TooLarge { .. }) => {}
        }
    }
    check
}

fn find_collisions(rows: &[CensusRow], cfg: &OracleConfig) -> Vec<Finding> {
    let mut pairs = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let comparable = a.n == b.n
                && a.t == b.t
                && a.order == b.order
                && a.d == b.d
                && a.check.as_ref().map(|c| c.oracle_order) == b.check.as_ref().map(|c| c.oracle_order);
            if comparable {
                pairs.push((a, b));
            }
        }
    }
    let mut found: Vec<Finding> = pairs
        .par_iter()
        .filter_map(|(a, b)| {
            let ga = build(&GiSpec::from_steps(a.n, &a.steps).unwrap());
            let gb = build(&GiSpec::from_steps(b.n, &b.steps).unwrap());
            match is_isomorphic(&ga, &gb, cfg) {
                Ok(Some(_)) => Some(Finding {
                    n: a.n,
                    first: a.steps.clone(),
                    second: b.steps.clone(),
                }),
                _ => None,
            }
        })
        .collect();
    found.sort_by(|x, y| (x.n, &x.first, &x.second).cmp(&(y.n, &y.first, &y.second)));
    found
}
