//! Individualization-refinement backtracking.
//!
//! Ordered partitions are refined by iterated neighbour-colour counting. The
//! refinement depends only on the graph structure and the cell order, so an
//! isomorphism carrying one ordered partition onto another also carries the
//! refined results onto each other, and their traces agree.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::graph::SimpleGraph;

pub(crate) type Cells = Vec<Vec<usize>>;

/// Initial cells keyed by `(degree, triangles through the vertex)`, ordered
/// by key. Returns the cells and the keys in cell order.
pub(crate) fn initial_cells(g: &SimpleGraph) -> (Cells, Vec<(usize, usize)>) {
    let mut keyed: Vec<((usize, usize), usize)> = (0..g.order())
        .map(|v| {
            let ns = g.neighbors(v);
            let triangles = ns
                .iter()
                .enumerate()
                .map(|(i, &a)| ns[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count())
                .sum();
            ((ns.len(), triangles), v)
        })
        .collect();
    keyed.sort_unstable();
    let mut cells: Cells = Vec::new();
    let mut keys = Vec::new();
    for (key, v) in keyed {
        if keys.last() == Some(&key) {
            cells.last_mut().unwrap().push(v);
        } else {
            keys.push(key);
            cells.push(vec![v]);
        }
    }
    (cells, keys)
}

/// Refines to an equitable ordered partition. The trace summarizes every
/// splitting round; equal inputs under an isomorphism give equal traces.
pub(crate) fn refine(g: &SimpleGraph, cells: Cells) -> (Cells, Vec<u64>) {
    let n = g.order();
    let mut color = vec![0usize; n];
    for (c, cell) in cells.iter().enumerate() {
        for &v in cell {
            color[v] = c;
        }
    }
    let mut count = cells.len();
    let mut current = cells;
    let mut trace = Vec::new();
    loop {
        let mut sigs: Vec<(Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut sig = Vec::with_capacity(g.degree(v) + 1);
                sig.push(color[v]);
                let start = sig.len();
                sig.extend(g.neighbors(v).iter().map(|&w| color[w]));
                sig[start..].sort_unstable();
                (sig, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next: Cells = Vec::new();
        let mut hasher = DefaultHasher::new();
        for i in 0..sigs.len() {
            if i == 0 || sigs[i].0 != sigs[i - 1].0 {
                sigs[i].0.hash(&mut hasher);
                next.push(Vec::new());
            }
            next.last_mut().unwrap().push(sigs[i].1);
        }
        next.len().hash(&mut hasher);
        for cell in &next {
            cell.len().hash(&mut hasher);
        }
        trace.push(hasher.finish());
        if next.len() == count {
            return (current, trace);
        }
        count = next.len();
        for (c, cell) in next.iter().enumerate() {
            for &v in cell {
                color[v] = c;
            }
        }
        current = next;
    }
}

/// Moves `v` out of cell `k` into its own cell placed just before it.
pub(crate) fn individualize(cells: &Cells, k: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..k]);
    out.push(vec![v]);
    out.push(cells[k].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[k + 1..]);
    out
}

/// First smallest non-singleton cell.
pub(crate) fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

/// Searches for an isomorphism `g1 → g2` carrying the ordered partition
/// `left` onto `right`. The returned map is verified edge by edge.
pub(crate) fn extend(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    left: Cells,
    right: Cells,
) -> Option<Vec<usize>> {
    let (l, tl) = refine(g1, left);
    let (r, tr) = refine(g2, right);
    if tl != tr || l.len() != r.len() || l.iter().zip(&r).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    match target_cell(&l) {
        None => {
            let mut map = vec![0; g1.order()];
            for (a, b) in l.iter().zip(&r) {
                map[a[0]] = b[0];
            }
            is_isomorphism(g1, g2, &map).then_some(map)
        }
        Some(k) => {
            let v = l[k][0];
            let left = individualize(&l, k, v);
            r[k].iter()
                .find_map(|&w| extend(g1, g2, left.clone(), individualize(&r, k, w)))
        }
    }
}

pub(crate) fn is_isomorphism(g1: &SimpleGraph, g2: &SimpleGraph, map: &[usize]) -> bool {
    g1.order() == g2.order()
        && g1.edge_count() == g2.edge_count()
        && g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v]))
}
