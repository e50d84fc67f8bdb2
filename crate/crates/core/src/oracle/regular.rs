//! Search for a subgroup acting regularly on the vertices.
//!
//! A graph is Cayley exactly when its automorphism group has such a
//! subgroup. Subgroups are grown one generator at a time; every generator
//! is fixed-point-free and sends the least vertex outside the current orbit
//! of vertex 0 into it.

use std::collections::{HashSet, VecDeque};

use indexmap::IndexSet;

use super::{OracleConfig, OracleError, PermGroup};
use crate::perm::Perm;

struct Search {
    elements: IndexSet<Perm>,
    fpf: Vec<bool>,
    identity: usize,
    nv: usize,
    visited: HashSet<Vec<usize>>,
}

impl Search {
    fn product(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].then(&self.elements[b]);
        self.elements
            .get_index_of(&p)
            .expect("group is closed under products")
    }

    /// Closure of `gens`, or `None` once it stops being semiregular or
    /// grows past the vertex count.
    fn closure(&self, gens: &[usize]) -> Option<Vec<usize>> {
        let mut seen = HashSet::from([self.identity]);
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.product(x, g);
                if seen.insert(y) {
                    if !self.fpf[y] || out.len() >= self.nv {
                        return None;
                    }
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Some(out)
    }

    fn grow(&mut self, gens: &mut Vec<usize>, members: &[usize]) -> Option<Vec<usize>> {
        if members.len() == self.nv {
            return Some(members.to_vec());
        }
        if !self.visited.insert(members.to_vec()) {
            return None;
        }
        let mut reached = vec![false; self.nv];
        for &m in members {
            reached[self.elements[m].apply(0)] = true;
        }
        let x = reached.iter().position(|&r| !r)?;
        let candidates: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.fpf[i] && self.elements[i].apply(0) == x)
            .collect();
        for c in candidates {
            gens.push(c);
            if let Some(next) = self.closure(gens) {
                if self.nv.is_multiple_of(next.len()) {
                    if let Some(found) = self.grow(gens, &next) {
                        return Some(found);
                    }
                }
            }
            gens.pop();
        }
        None
    }
}

/// A subgroup of `group` acting regularly on its `degree` points, as a list
/// of its elements, or `None` if there is none. The group must have at most
/// `cfg.regular_search_cap` elements.
pub fn find_regular_subgroup(
    group: &mut PermGroup,
    cfg: &OracleConfig,
) -> Result<Option<Vec<Perm>>, OracleError> {
    if group.order() > cfg.regular_search_cap as u128 {
        return Err(OracleError::CapExceeded {
            order: group.order(),
            cap: cfg.regular_search_cap,
        });
    }
    let nv = group.degree();
    if !group.order().is_multiple_of(nv as u128) {
        return Ok(None);
    }
    let elements: IndexSet<Perm> = group
        .materialize(cfg.regular_search_cap)?
        .iter()
        .cloned()
        .collect();
    let identity = elements
        .get_index_of(&Perm::identity(nv))
        .expect("group contains the identity");
    let fpf = elements
        .iter()
        .map(|p| p.is_identity() || p.fixed_points() == 0)
        .collect();
    let mut search = Search {
        elements,
        fpf,
        identity,
        nv,
        visited: HashSet::new(),
    };
    let found = search.grow(&mut Vec::new(), &[identity]);
    Ok(found.map(|idx| {
        let sub: Vec<Perm> = idx.into_iter().map(|i| search.elements[i].clone()).collect();
        debug_assert!(is_regular(&sub, nv));
        sub
    }))
}

/// `sub` has exactly `nv` elements and sends 0 to every vertex.
pub fn is_regular(sub: &[Perm], nv: usize) -> bool {
    let mut hit = vec![false; nv];
    for p in sub {
        hit[p.apply(0)] = true;
    }
    sub.len() == nv
        && hit.iter().all(|&h| h)
        && sub.iter().all(|p| p.is_identity() || p.fixed_points() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, GiSpec};
    use crate::oracle::brute_aut;

    fn regular(n: u32, j: &[u32]) -> Option<Vec<Perm>> {
        let cfg = OracleConfig::default();
        let g = build(&GiSpec::from_steps(n, j).unwrap());
        let mut group = brute_aut(&g, &cfg).unwrap();
        find_regular_subgroup(&mut group, &cfg).unwrap()
    }

    #[test]
    fn cube_is_cayley() {
        let sub = regular(4, &[1, 1]).unwrap();
        assert_eq!(sub.len(), 8);
        assert!(is_regular(&sub, 8));
    }

    #[test]
    fn heawood_like_examples() {
        let sub = regular(7, &[1, 2, 3]).unwrap();
        assert_eq!(sub.len(), 21);
        assert!(is_regular(&sub, 21));
        let sub = regular(8, &[1, 3]).unwrap();
        assert_eq!(sub.len(), 16);
    }

    #[test]
    fn petersen_is_not_cayley() {
        assert!(regular(5, &[1, 2]).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = OracleConfig {
            regular_search_cap: 10,
            ..OracleConfig::default()
        };
        let g = build(&GiSpec::from_steps(5, &[1, 2]).unwrap());
        let mut group = brute_aut(&g, &cfg).unwrap();
        assert!(matches!(
            find_regular_subgroup(&mut group, &cfg),
            Err(OracleError::CapExceeded { .. })
        ));
    }
}
