//! Brute-force ground truth for everything the closed formulas claim.
//!
//! Nothing here looks at GI-graph parameters: automorphism groups, orbits,
//! isomorphisms, regular subgroups and girth are all computed from the
//! adjacency structure alone.

mod regular;
mod search;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::perm::{group_closure, Perm, PermError};

pub use regular::find_regular_subgroup;

pub const DEFAULT_MAX_VERTICES: usize = 60;
pub const DEFAULT_ELEMENT_CAP: usize = 250_000;
pub const DEFAULT_REGULAR_SEARCH_CAP: usize = 10_000;
pub const MAX_VERTICES_ENV: &str = "GIGRAPH_MAX_VERTICES";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, above the oracle cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("group of order {order} exceeds the cap of {cap} elements")]
    CapExceeded { order: u128, cap: usize },
}

impl From<PermError> for OracleError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::CapExceeded(cap) => OracleError::CapExceeded { order: 0, cap },
            other => panic!("oracle produced inconsistent permutations: {other}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest graph the oracle will touch.
    pub max_vertices: usize,
    /// Largest group that gets materialized element by element.
    pub element_cap: usize,
    /// Largest group handed to the regular-subgroup search.
    pub regular_search_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
            element_cap: DEFAULT_ELEMENT_CAP,
            regular_search_cap: DEFAULT_REGULAR_SEARCH_CAP,
        }
    }
}

impl OracleConfig {
    /// Defaults, with the vertex cap taken from `GIGRAPH_MAX_VERTICES` if set.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(cap) = std::env::var(MAX_VERTICES_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            cfg.max_vertices = cap;
        }
        cfg
    }

    fn check(&self, g: &SimpleGraph) -> Result<(), OracleError> {
        if g.order() > self.max_vertices {
            return Err(OracleError::TooLarge {
                vertices: g.order(),
                cap: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// A permutation group given by a strong generating set, with its exact
/// order and, when small enough, its full element list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    order: u128,
    generators: Vec<Perm>,
    base: Vec<usize>,
    elements: Option<Vec<Perm>>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Base points of the stabilizer chain used to count the order.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    /// Materializes all elements unless the order exceeds `cap`.
    pub fn materialize(&mut self, cap: usize) -> Result<&[Perm], OracleError> {
        if self.elements.is_none() {
            if self.order > cap as u128 {
                return Err(OracleError::CapExceeded {
                    order: self.order,
                    cap,
                });
            }
            let elements = if self.generators.is_empty() {
                vec![Perm::identity(self.degree)]
            } else {
                group_closure(&self.generators, cap)?
            };
            assert_eq!(elements.len() as u128, self.order, "closure disagrees with chain");
            self.elements = Some(elements);
        }
        Ok(self.elements.as_deref().unwrap())
    }
}

/// The full automorphism group, found by individualization-refinement.
///
/// Builds a stabilizer chain: at each level one base point `b` is chosen and
/// an automorphism fixing the earlier base points is searched for each
/// candidate image of `b` not already reached. The order is the product of
/// the orbit lengths.
pub fn brute_aut<G: AsRef<SimpleGraph>>(graph: &G, cfg: &OracleConfig) -> Result<PermGroup, OracleError> {
    let g = graph.as_ref();
    cfg.check(g)?;
    let degree = g.order();
    let (cells, _) = search::initial_cells(g);
    let (mut current, _) = search::refine(g, cells);
    let mut order: u128 = 1;
    let mut generators: Vec<Perm> = Vec::new();
    let mut base = Vec::new();
    while let Some(k) = search::target_cell(&current) {
        let b = current[k][0];
        let fixed_b = search::individualize(&current, k, b);
        let mut level_gens: Vec<Perm> = Vec::new();
        let mut orbit = vec![false; degree];
        orbit[b] = true;
        for &x in &current[k] {
            if orbit[x] {
                continue;
            }
            let target = search::individualize(&current, k, x);
            if let Some(map) = search::extend(g, g, fixed_b.clone(), target) {
                let p = Perm::from_images(map).expect("search returns bijections");
                level_gens.push(p);
                orbit = orbit_of(b, &level_gens, degree);
            }
        }
        order *= orbit.iter().filter(|&&x| x).count() as u128;
        generators.extend(level_gens);
        base.push(b);
        current = search::refine(g, fixed_b).0;
    }
    debug_assert!(generators.iter().all(|p| p.is_automorphism(g)));
    let mut group = PermGroup {
        degree,
        order,
        generators,
        base,
        elements: None,
    };
    if order <= cfg.element_cap as u128 {
        group.materialize(cfg.element_cap)?;
    }
    Ok(group)
}

fn orbit_of(x: usize, gens: &[Perm], degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    seen
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

/// Vertex orbits of the group generated by `group`'s generators.
pub fn vertex_orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(group.degree);
    for g in &group.generators {
        for x in 0..group.degree {
            uf.union(x, g.apply(x));
        }
    }
    uf.classes()
}

/// Orbits on unordered edges, each edge written `(u, v)` with `u < v`.
pub fn edge_orbits<G: AsRef<SimpleGraph>>(group: &PermGroup, graph: &G) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = graph.as_ref().edges().collect();
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut uf = UnionFind::new(edges.len());
    for g in &group.generators {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (g.apply(u), g.apply(v));
            let j = index[&(a.min(b), a.max(b))];
            uf.union(i, j);
        }
    }
    uf.classes()
        .into_iter()
        .map(|class| class.into_iter().map(|i| edges[i]).collect())
        .collect()
}

/// Searches for an isomorphism `g1 → g2`; the witness maps vertex `i` of
/// `g1` to `witness[i]` of `g2` and is verified before it is returned.
pub fn is_isomorphic<G1: AsRef<SimpleGraph>, G2: AsRef<SimpleGraph>>(
    g1: &G1,
    g2: &G2,
    cfg: &OracleConfig,
) -> Result<Option<Vec<usize>>, OracleError> {
    let (g1, g2) = (g1.as_ref(), g2.as_ref());
    cfg.check(g1)?;
    cfg.check(g2)?;
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let (c1, k1) = search::initial_cells(g1);
    let (c2, k2) = search::initial_cells(g2);
    if k1 != k2 || c1.iter().zip(&c2).any(|(a, b)| a.len() != b.len()) {
        return Ok(None);
    }
    let found = search::extend(g1, g2, c1, c2);
    if let Some(map) = &found {
        assert!(search::is_isomorphism(g1, g2, map));
    }
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GirthReport {
    /// Length of a shortest cycle; `None` for forests.
    pub girth: Option<usize>,
    pub has_4_cycle: bool,
}

pub fn girth_and_c4<G: AsRef<SimpleGraph>>(graph: &G) -> GirthReport {
    let g = graph.as_ref();
    let n = g.order();
    let mut girth: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    girth = Some(girth.map_or(len, |x| x.min(len)));
                }
            }
        }
    }
    // two vertices with two common neighbours span a 4-cycle
    let has_4_cycle = (0..n).any(|u| {
        let mut common = vec![0u32; n];
        g.neighbors(u).iter().any(|&x| {
            g.neighbors(x).iter().any(|&w| {
                if w == u {
                    return false;
                }
                common[w] += 1;
                common[w] >= 2
            })
        })
    });
    GirthReport { girth, has_4_cycle }
}
