//! Explicit automorphisms of GI-graphs and the closed-form group order.
//!
//! Every connected GI-graph other than eight exceptional edge-transitive
//! ones has an automorphism group generated by
//!
//! * the rotation `ρ(s, v) = (s, v + 1)` and reflection `τ(s, v) = (s, -v)`,
//! * `σ_a(s, v) = (α(s), a·v)` for units `a` with `a·J = ±J` as multisets,
//! * `λ_{i,s1,s2}`, which swaps the residue-class-`i` cycles of two layers
//!   carrying the same step.
//!
//! The group order follows from that structure: `n·|A|` when `J` has no
//! repeated steps, and `n·|B|·∏ (m_j!)^{gcd(n,j)}` otherwise. Disconnected
//! graphs reduce to a wreath product over the components, and the eight
//! exceptional graphs are looked up in a table.
//!
//! Products read left to right, as in [`Perm::then`].

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, gcd, is_unit, mul_mod, units, ArithError, UnitSet};
use crate::canon::{canonical_form, scaled_standard};
use crate::graph::{build, components, GiSpec};
use crate::perm::{group_closure, Perm, PermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("multiplying J by {0} does not give ±J")]
    NotInB(u32),
    #[error("layers {s1} and {s2} carry different steps")]
    StepsDiffer { s1: usize, s2: usize },
    #[error("layers must be distinct and below {t}, got {s1} and {s2}")]
    BadLayers { s1: usize, s2: usize, t: usize },
    #[error("residue class {i} is outside 0..{d}")]
    BadClass { i: u32, d: u32 },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The eight connected edge-transitive GI-graphs, in canonical form, with
/// their automorphism group orders and group descriptions.
pub const SPORADIC: [(u32, &[u32], u128, &str); 8] = [
    (4, &[1, 1], 48, "S4 x Z2"),
    (5, &[1, 2], 120, "S5"),
    (8, &[1, 3], 96, "order 12n, <rho, tau, mu>"),
    (10, &[1, 2], 120, "A5 x Z2"),
    (10, &[1, 3], 240, "S5 x Z2"),
    (12, &[1, 5], 144, "order 12n, <rho, tau, mu>"),
    (24, &[1, 5], 288, "order 12n, <rho, tau, mu>"),
    (3, &[1, 1, 1], 72, "(D6 x D6) : Z2"),
];

/// Table entry for a connected spec whose canonical form is sporadic.
pub fn sporadic_entry(spec: &GiSpec) -> Option<(u128, &'static str)> {
    if !spec.is_connected() {
        return None;
    }
    let canon = canonical_form(spec);
    SPORADIC
        .iter()
        .find(|(n, j, _, _)| *n == canon.n && *j == canon.steps.as_slice())
        .map(|&(_, _, order, note)| (order, note))
}

pub fn rho(spec: &GiSpec) -> Perm {
    let n = spec.n() as usize;
    Perm::from_fn(spec.vertex_count(), |x| {
        let (s, v) = (x / n, x % n);
        s * n + (v + 1) % n
    })
}

pub fn tau(spec: &GiSpec) -> Perm {
    let n = spec.n() as usize;
    Perm::from_fn(spec.vertex_count(), |x| {
        let (s, v) = (x / n, x % n);
        s * n + (n - v) % n
    })
}

/// The layer bijection `α` attached to `σ_a`: each block of equal-step
/// layers goes monotonically onto the block carrying `±a·j`.
pub fn alpha(spec: &GiSpec, a: u32) -> Result<Vec<usize>, AutError> {
    let n = spec.n();
    if !is_unit(a, n) {
        return Err(ArithError::NotAUnit { a: a % n, n }.into());
    }
    if scaled_standard(n, spec.steps(), a) != spec.steps() {
        return Err(AutError::NotInB(a % n));
    }
    let classes = spec.step_classes();
    let mut map = vec![0; spec.t()];
    for (j, layers) in &classes {
        let x = mul_mod(a, *j, n);
        let target = x.min(n - x);
        let (_, target_layers) = classes
            .iter()
            .find(|(k, _)| *k == target)
            .expect("multiset equality guarantees a target block");
        for (&from, &to) in layers.iter().zip(target_layers) {
            map[from] = to;
        }
    }
    Ok(map)
}

pub fn sigma(spec: &GiSpec, a: u32) -> Result<Perm, AutError> {
    let alpha = alpha(spec, a)?;
    let n = spec.n() as usize;
    let a = (a % spec.n()) as usize;
    Ok(Perm::from_fn(spec.vertex_count(), |x| {
        let (s, v) = (x / n, x % n);
        alpha[s] * n + (a * v) % n
    }))
}

fn check_pair(spec: &GiSpec, s1: usize, s2: usize) -> Result<u32, AutError> {
    let t = spec.t();
    if s1 == s2 || s1 >= t || s2 >= t {
        return Err(AutError::BadLayers { s1, s2, t });
    }
    if spec.step(s1) != spec.step(s2) {
        return Err(AutError::StepsDiffer { s1, s2 });
    }
    Ok(gcd(spec.n() as u64, spec.step(s1) as u64) as u32)
}

/// Swaps `(s1, v)` and `(s2, v)` for every `v ≡ i (mod gcd(n, j_{s1}))`.
pub fn lambda(spec: &GiSpec, i: u32, s1: usize, s2: usize) -> Result<Perm, AutError> {
    let d = check_pair(spec, s1, s2)?;
    if i >= d {
        return Err(AutError::BadClass { i, d });
    }
    Ok(swap_layers_where(spec, s1, s2, |v| v % d as usize == i as usize))
}

/// Swaps layers `s1` and `s2` entirely.
pub fn lambda_full(spec: &GiSpec, s1: usize, s2: usize) -> Result<Perm, AutError> {
    check_pair(spec, s1, s2)?;
    Ok(swap_layers_where(spec, s1, s2, |_| true))
}

fn swap_layers_where(spec: &GiSpec, s1: usize, s2: usize, pick: impl Fn(usize) -> bool) -> Perm {
    let n = spec.n() as usize;
    Perm::from_fn(spec.vertex_count(), |x| {
        let (s, v) = (x / n, x % n);
        match s {
            _ if !pick(v) => x,
            s if s == s1 => s2 * n + v,
            s if s == s2 => s1 * n + v,
            _ => x,
        }
    })
}

/// Units `a` with `a(J ∪ -J) = J ∪ -J`, comparing underlying sets.
pub fn units_fixing_set(spec: &GiSpec) -> UnitSet {
    let n = spec.n();
    let mut set = spec.steps().to_vec();
    set.dedup();
    let all = units(n);
    let fixed: Vec<u32> = all
        .iter()
        .filter(|&a| {
            let mut image = scaled_standard(n, &set, a);
            image.dedup();
            image == set
        })
        .collect();
    UnitSet::new(n, fixed).expect("units")
}

/// Units `a` with `a·J = ±J` as multisets.
pub fn units_fixing_multiset(spec: &GiSpec) -> UnitSet {
    let n = spec.n();
    let all = units(n);
    let fixed: Vec<u32> = all
        .iter()
        .filter(|&a| scaled_standard(n, spec.steps(), a) == spec.steps())
        .collect();
    UnitSet::new(n, fixed).expect("units")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AutCase {
    Disconnected,
    Sporadic,
    SetCase,
    MultisetCase,
    SingleLayer,
}

impl AutCase {
    pub fn name(self) -> &'static str {
        match self {
            AutCase::Disconnected => "Disconnected",
            AutCase::Sporadic => "Sporadic",
            AutCase::SetCase => "SetCase",
            AutCase::MultisetCase => "MultisetCase",
            AutCase::SingleLayer => "SingleLayer",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepFactor {
    pub step: u32,
    pub multiplicity: u32,
    pub gcd: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CaseParts {
    Disconnected {
        copies: u32,
        component: GiSpec,
        component_order: u128,
    },
    SingleLayer {
        copies: u32,
        cycle_length: u32,
    },
    Sporadic {
        canonical: Vec<u32>,
        group: &'static str,
    },
    SetCase {
        a_size: usize,
    },
    MultisetCase {
        b_size: usize,
        factors: Vec<StepFactor>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutOrderReport {
    pub order: u128,
    pub case: AutCase,
    pub parts: CaseParts,
}

fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

pub fn aut_order(spec: &GiSpec) -> AutOrderReport {
    let n = spec.n();
    let (d, component) = components(spec);
    let report = if spec.t() == 1 {
        let len = component.n();
        AutOrderReport {
            order: factorial(d) * (2 * len as u128).pow(d),
            case: AutCase::SingleLayer,
            parts: CaseParts::SingleLayer {
                copies: d,
                cycle_length: len,
            },
        }
    } else if d > 1 {
        let inner = aut_order(&component).order;
        AutOrderReport {
            order: factorial(d) * inner.pow(d),
            case: AutCase::Disconnected,
            parts: CaseParts::Disconnected {
                copies: d,
                component,
                component_order: inner,
            },
        }
    } else if let Some((order, group)) = sporadic_entry(spec) {
        AutOrderReport {
            order,
            case: AutCase::Sporadic,
            parts: CaseParts::Sporadic {
                canonical: canonical_form(spec).steps,
                group,
            },
        }
    } else if spec.is_set() {
        let a_size = units_fixing_set(spec).len();
        AutOrderReport {
            order: n as u128 * a_size as u128,
            case: AutCase::SetCase,
            parts: CaseParts::SetCase { a_size },
        }
    } else {
        let b_size = units_fixing_multiset(spec).len();
        let factors: Vec<StepFactor> = spec
            .step_classes()
            .into_iter()
            .map(|(j, layers)| StepFactor {
                step: j,
                multiplicity: layers.len() as u32,
                gcd: gcd(n as u64, j as u64) as u32,
            })
            .collect();
        let product: u128 = factors
            .iter()
            .map(|f| factorial(f.multiplicity).pow(f.gcd))
            .product();
        AutOrderReport {
            order: n as u128 * b_size as u128 * product,
            case: AutCase::MultisetCase,
            parts: CaseParts::MultisetCase { b_size, factors },
        }
    };
    debug_assert!(report.order >= 2 * n as u128);
    report
}

/// Generators of the partition-respecting automorphisms of one component.
#[derive(Debug, Clone)]
pub struct Generators {
    /// Number of isomorphic components of the original graph.
    pub copies: u32,
    /// The connected component the permutations act on.
    pub component: GiSpec,
    pub perms: Vec<Perm>,
}

/// `ρ`, `τ`, `σ_a` for a generating set of `B` modulo `±1`, and every
/// `λ_{i,s,s'}` over consecutive equal-step layers.
///
/// For a disconnected spec the permutations act on one component; use
/// [`Generators::on_whole_graph`] for the wreath-product generators.
pub fn generators(spec: &GiSpec) -> Result<Generators, AutError> {
    let (copies, component) = components(spec);
    let n = component.n();
    let mut perms = vec![rho(&component), tau(&component)];
    let b = units_fixing_multiset(&component);
    for a in arith::generating_set(&b, &[n - 1])? {
        perms.push(sigma(&component, a)?);
    }
    for (j, layers) in component.step_classes() {
        let d = gcd(n as u64, j as u64) as u32;
        for pair in layers.windows(2) {
            for i in 0..d {
                perms.push(lambda(&component, i, pair[0], pair[1])?);
            }
        }
    }
    let graph = build(&component);
    debug_assert!(perms.iter().all(|p| p.is_automorphism(graph.graph())));
    Ok(Generators {
        copies,
        component,
        perms,
    })
}

impl Generators {
    /// Lifts to the full graph: component generators acting on copy 0, plus
    /// a transposition and a cycle of the copies.
    pub fn on_whole_graph(&self) -> Vec<Perm> {
        let d = self.copies as usize;
        let m = self.component.n() as usize;
        let n = m * d;
        let t = self.component.t();
        let degree = n * t;
        // component vertex (s, w) in copy c sits at (s, c + d·w)
        let split = |x: usize| {
            let (s, v) = (x / n, x % n);
            (s, v % d, v / d)
        };
        let join = |s: usize, c: usize, w: usize| s * n + c + d * w;
        let mut out: Vec<Perm> = self
            .perms
            .iter()
            .map(|p| {
                Perm::from_fn(degree, |x| {
                    let (s, c, w) = split(x);
                    if c != 0 {
                        return x;
                    }
                    let y = p.apply(s * m + w);
                    join(y / m, 0, y % m)
                })
            })
            .collect();
        if d > 1 {
            out.push(Perm::from_fn(degree, |x| {
                let (s, c, w) = split(x);
                let c = match c {
                    0 => 1,
                    1 => 0,
                    c => c,
                };
                join(s, c, w)
            }));
            out.push(Perm::from_fn(degree, |x| {
                let (s, c, w) = split(x);
                join(s, (c + 1) % d, w)
            }));
        }
        out
    }
}

/// Order of the group generated by [`generators`] on one component.
pub fn generated_order(spec: &GiSpec, cap: usize) -> Result<usize, AutError> {
    let gens = generators(spec)?;
    Ok(group_closure(&gens.perms, cap)?.len())
}
