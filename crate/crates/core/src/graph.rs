//! GI-graph parameters and their concrete realization.
//!
//! A spec `GI(n; j_0, …, j_{t-1})` lives on `Z_t × Z_n`. Vertex `(s, v)` has
//! linear index `s·n + v`. Spoke edges join `(s, v)` and `(s', v)` for every
//! pair of layers; layer edges join `(s, v)` and `(s, v + j_s)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, normalize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("modulus must be at least 3, got {0}")]
    BadModulus(i64),
    #[error("step list is empty")]
    EmptyJ,
    #[error("step {0} is congruent to 0 or n/2")]
    BadStep(i64),
    #[error("spoke recognition needs at least 4 layers, got {0}")]
    TooFewLayers(usize),
}

/// Validated parameters of a GI-graph, stored in standard form: each step
/// folded into `(0, n/2)` and the multiset sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GiSpec {
    n: u32,
    #[serde(rename = "J")]
    steps: Vec<u32>,
}

/// Folds a raw step into `(0, n/2)`, rejecting `0` and `n/2`.
pub fn fold_step(n: u32, raw: i64) -> Result<u32, SpecError> {
    let j = normalize(raw, n);
    if j == 0 || 2 * j == n {
        return Err(SpecError::BadStep(raw));
    }
    Ok(j.min(n - j))
}

impl GiSpec {
    pub fn new(n: i64, raw_steps: &[i64]) -> Result<Self, SpecError> {
        if n < 3 || n > u32::MAX as i64 {
            return Err(SpecError::BadModulus(n));
        }
        if raw_steps.is_empty() {
            return Err(SpecError::EmptyJ);
        }
        let n = n as u32;
        let mut steps = raw_steps
            .iter()
            .map(|&j| fold_step(n, j))
            .collect::<Result<Vec<_>, _>>()?;
        steps.sort_unstable();
        Ok(GiSpec { n, steps })
    }

    /// Convenience constructor for unsigned steps.
    pub fn from_steps(n: u32, steps: &[u32]) -> Result<Self, SpecError> {
        let raw: Vec<i64> = steps.iter().map(|&j| j as i64).collect();
        Self::new(n as i64, &raw)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of layers.
    pub fn t(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    pub fn step(&self, layer: usize) -> u32 {
        self.steps[layer]
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize * self.t()
    }

    /// `gcd(n, j_0, …, j_{t-1})`, the number of connected components.
    pub fn gcd_all(&self) -> u32 {
        self.steps
            .iter()
            .fold(self.n as u64, |g, &j| gcd(g, j as u64)) as u32
    }

    pub fn is_connected(&self) -> bool {
        self.gcd_all() == 1
    }

    /// True iff no step value repeats.
    pub fn is_set(&self) -> bool {
        self.steps.windows(2).all(|w| w[0] != w[1])
    }

    pub fn index(&self, v: VertexId) -> usize {
        v.s * self.n as usize + v.v as usize
    }

    pub fn vertex(&self, index: usize) -> VertexId {
        let n = self.n as usize;
        VertexId {
            s: index / n,
            v: (index % n) as u32,
        }
    }

    /// Distinct step values with the layers that carry them, ascending.
    pub fn step_classes(&self) -> Vec<(u32, Vec<usize>)> {
        let mut out: Vec<(u32, Vec<usize>)> = Vec::new();
        for (s, &j) in self.steps.iter().enumerate() {
            match out.last_mut() {
                Some((last, layers)) if *last == j => layers.push(s),
                _ => out.push((j, vec![s])),
            }
        }
        out
    }
}

impl fmt::Display for GiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GI({};", self.n)?;
        for (i, j) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ")")
    }
}

/// A vertex `(s, v)`: layer `s`, position `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId {
    pub s: usize,
    pub v: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    Spoke,
    Layer(usize),
}

/// An undirected edge between linear vertex indices, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

/// Plain undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Disjoint union of `copies` copies of `self`; copy `c` occupies
    /// indices `c·order .. (c+1)·order`.
    pub fn disjoint_copies(&self, copies: usize) -> SimpleGraph {
        let m = self.order();
        let edges: Vec<(usize, usize)> = (0..copies)
            .flat_map(|c| self.edges().map(move |(u, v)| (u + c * m, v + c * m)))
            .collect();
        SimpleGraph::from_edges(m * copies, edges)
    }
}

impl AsRef<SimpleGraph> for SimpleGraph {
    fn as_ref(&self) -> &SimpleGraph {
        self
    }
}

/// A built GI-graph together with its fundamental edge-partition.
#[derive(Debug, Clone)]
pub struct GiGraph {
    spec: GiSpec,
    graph: SimpleGraph,
    edges: Vec<Edge>,
}

impl AsRef<SimpleGraph> for GiGraph {
    fn as_ref(&self) -> &SimpleGraph {
        &self.graph
    }
}

pub fn build(spec: &GiSpec) -> GiGraph {
    let n = spec.n() as usize;
    let t = spec.t();
    let idx = |s: usize, v: usize| s * n + (v % n);
    let mut edges = Vec::with_capacity(n * t * (t + 1) / 2);
    for v in 0..n {
        for s in 0..t {
            for s2 in s + 1..t {
                edges.push(Edge {
                    u: idx(s, v),
                    v: idx(s2, v),
                    kind: EdgeKind::Spoke,
                });
            }
        }
    }
    for s in 0..t {
        let j = spec.step(s) as usize;
        for v in 0..n {
            let (a, b) = (idx(s, v), idx(s, v + j));
            edges.push(Edge {
                u: a.min(b),
                v: a.max(b),
                kind: EdgeKind::Layer(s),
            });
        }
    }
    edges.sort_unstable();
    let graph = SimpleGraph::from_edges(n * t, edges.iter().map(|e| (e.u, e.v)));
    debug_assert_eq!(graph.edge_count(), edges.len());
    GiGraph {
        spec: spec.clone(),
        graph,
        edges,
    }
}

impl GiGraph {
    pub fn spec(&self) -> &GiSpec {
        &self.spec
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// Edges with their spoke/layer tags, sorted by endpoints.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.order()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_kind(&self, u: usize, v: usize) -> Option<EdgeKind> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
            .map(|i| self.edges[i].kind)
    }
}

/// Splits a spec into its component count `d` and the component spec
/// `GI(n/d; J/d)`.
pub fn components(spec: &GiSpec) -> (u32, GiSpec) {
    let d = spec.gcd_all();
    if d == 1 {
        return (1, spec.clone());
    }
    let steps: Vec<u32> = spec.steps().iter().map(|&j| j / d).collect();
    let component = GiSpec::from_steps(spec.n() / d, &steps)
        .expect("dividing a valid spec by its gcd stays valid");
    (d, component)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LayerCycles {
    pub layer: usize,
    pub cycle_count: u32,
    pub cycle_length: u32,
}

pub fn layer_cycle_structure(spec: &GiSpec) -> Vec<LayerCycles> {
    spec.steps()
        .iter()
        .enumerate()
        .map(|(layer, &j)| {
            let d = gcd(spec.n() as u64, j as u64) as u32;
            LayerCycles {
                layer,
                cycle_count: d,
                cycle_length: spec.n() / d,
            }
        })
        .collect()
}

/// Recomputes spoke/layer tags from structure alone: with four or more
/// layers, an edge is a spoke exactly when it lies in a `K_4`.
pub fn recover_partition(graph: &GiGraph) -> Result<Vec<Edge>, SpecError> {
    let t = graph.spec().t();
    if t < 4 {
        return Err(SpecError::TooFewLayers(t));
    }
    let g = graph.graph();
    let n = graph.spec().n() as usize;
    let tagged = graph
        .edges()
        .iter()
        .map(|e| {
            let common: Vec<usize> = g
                .neighbors(e.u)
                .iter()
                .copied()
                .filter(|&x| g.has_edge(e.v, x))
                .collect();
            let in_k4 = common
                .iter()
                .enumerate()
                .any(|(i, &x)| common[i + 1..].iter().any(|&y| g.has_edge(x, y)));
            let kind = if in_k4 {
                EdgeKind::Spoke
            } else {
                // a non-spoke edge stays inside one layer
                EdgeKind::Layer(e.u / n)
            };
            Edge { kind, ..*e }
        })
        .collect();
    Ok(tagged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, j: &[u32]) -> GiSpec {
        GiSpec::from_steps(n, j).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(GiSpec::new(6, &[5, 1, 4]).unwrap().steps(), &[1, 1, 2]);
        assert_eq!(GiSpec::new(6, &[3, 1]), Err(SpecError::BadStep(3)));
        assert_eq!(GiSpec::new(7, &[1, 2, 3]).unwrap().steps(), &[1, 2, 3]);
        assert_eq!(GiSpec::new(2, &[1]), Err(SpecError::BadModulus(2)));
        assert_eq!(GiSpec::new(7, &[]), Err(SpecError::EmptyJ));
        assert_eq!(GiSpec::new(7, &[14]), Err(SpecError::BadStep(14)));
        assert_eq!(GiSpec::new(7, &[-1, 9]).unwrap().steps(), &[1, 2]);
    }

    #[test]
    fn petersen_counts() {
        let g = build(&spec(5, &[1, 2]));
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.graph().degree(v) == 3));
    }

    #[test]
    fn single_layer_is_cycle() {
        let g = build(&spec(4, &[1]));
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.graph().degree(v) == 2));
    }

    #[test]
    fn three_layer_counts() {
        let g = build(&spec(6, &[1, 1, 2]));
        assert_eq!(g.vertex_count(), 18);
        assert_eq!(g.edge_count(), 36);
        assert!((0..18).all(|v| g.graph().degree(v) == 4));
    }

    #[test]
    fn edge_partition_shape() {
        let s = spec(9, &[1, 3, 3, 4]);
        let g = build(&s);
        let n = 9;
        let t = 4;
        let spokes = g.edges().iter().filter(|e| e.kind == EdgeKind::Spoke).count();
        assert_eq!(spokes, n * t * (t - 1) / 2);
        for e in g.edges() {
            let (a, b) = (s.vertex(e.u), s.vertex(e.v));
            match e.kind {
                EdgeKind::Spoke => assert_eq!(a.v, b.v),
                EdgeKind::Layer(l) => {
                    assert_eq!((a.s, b.s), (l, l));
                    let diff = (b.v + 9 - a.v) % 9;
                    let j = s.step(l);
                    assert!(diff == j || diff == 9 - j);
                }
            }
        }
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&spec(6, &[2, 2])), (2, spec(3, &[1, 1])));
        assert_eq!(components(&spec(7, &[1, 2, 3])), (1, spec(7, &[1, 2, 3])));
        assert_eq!(components(&spec(12, &[2, 4])), (2, spec(6, &[1, 2])));
    }

    #[test]
    fn layer_cycle_examples() {
        let cyc = |l, c, len| LayerCycles {
            layer: l,
            cycle_count: c,
            cycle_length: len,
        };
        assert_eq!(
            layer_cycle_structure(&spec(6, &[1, 1, 2])),
            vec![cyc(0, 1, 6), cyc(1, 1, 6), cyc(2, 2, 3)]
        );
        assert_eq!(layer_cycle_structure(&spec(11, &[1])), vec![cyc(0, 1, 11)]);
        assert_eq!(
            layer_cycle_structure(&spec(10, &[1, 2])),
            vec![cyc(0, 1, 10), cyc(1, 2, 5)]
        );
    }

    // Layer subgraphs really split into gcd(n, j) cycles of equal length.
    #[test]
    fn layer_cycles_match_construction() {
        let s = spec(12, &[1, 2, 3, 4]);
        let g = build(&s);
        for lc in layer_cycle_structure(&s) {
            let n = 12;
            let mut seen = vec![false; n];
            let mut lengths = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(v) = stack.pop() {
                    len += 1;
                    let idx = lc.layer * n + v;
                    for &w in g.graph().neighbors(idx) {
                        if g.edge_kind(idx, w) == Some(EdgeKind::Layer(lc.layer)) {
                            let wv = w % n;
                            if !seen[wv] {
                                seen[wv] = true;
                                stack.push(wv);
                            }
                        }
                    }
                }
                lengths.push(len);
            }
            assert_eq!(lengths.len() as u32, lc.cycle_count);
            assert!(lengths.iter().all(|&l| l == lc.cycle_length));
        }
    }

    #[test]
    fn spokes_recovered_from_cliques() {
        for s in [spec(5, &[1, 1, 2, 2]), spec(7, &[1, 2, 3, 3]), spec(12, &[1, 4, 4, 4])] {
            let g = build(&s);
            assert_eq!(recover_partition(&g).unwrap(), g.edges());
        }
        let g = build(&spec(5, &[1, 2]));
        assert_eq!(recover_partition(&g), Err(SpecError::TooFewLayers(2)));
    }

    #[test]
    fn display_and_index() {
        let s = spec(7, &[3, 1, 2]);
        assert_eq!(s.to_string(), "GI(7;1,2,3)");
        let v = VertexId { s: 2, v: 5 };
        assert_eq!(s.index(v), 19);
        assert_eq!(s.vertex(19), v);
    }
}
