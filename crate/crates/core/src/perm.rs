//! Permutations of vertex indices and explicit group closure.
//!
//! Products read left to right: `p.then(q)` applies `p` first, then `q`.

use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 0..{0}")]
    NotBijective(usize),
    #[error("permutations act on different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("no generators given")]
    NoGenerators,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            image: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijective(n));
            }
        }
        Ok(Perm {
            image: image.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from a map that is known to be bijective.
    pub(crate) fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Self {
        let p = Perm {
            image: (0..degree).map(|x| f(x) as u32).collect(),
        };
        debug_assert!(Perm::from_images(p.images()).is_ok());
        p
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            image: self.image.iter().map(|&x| other.image[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { image: inv }
    }

    pub fn pow(&self, k: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    pub fn fixed_points(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    pub fn is_automorphism(&self, graph: &SimpleGraph) -> bool {
        self.degree() == graph.order()
            && graph
                .edges()
                .all(|(u, v)| graph.has_edge(self.apply(u), self.apply(v)))
    }

    /// Disjoint cycle notation, omitting fixed points; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.cycle_string())
    }
}

/// All elements of the group generated by `gens`, in breadth-first order
/// starting from the identity.
pub fn group_closure(gens: &[Perm], cap: usize) -> Result<Vec<Perm>, PermError> {
    let degree = gens.first().ok_or(PermError::NoGenerators)?.degree();
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch(degree, g.degree()));
    }
    let mut elements: IndexSet<Perm> = IndexSet::new();
    elements.insert(Perm::identity(degree));
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i].clone();
        for g in gens {
            let y = x.then(g);
            if !elements.contains(&y) {
                if elements.len() >= cap {
                    return Err(PermError::CapExceeded(cap));
                }
                elements.insert(y);
            }
        }
        i += 1;
    }
    Ok(elements.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Perm {
        Perm::from_fn(n, |x| (x + 1) % n)
    }

    fn refl(n: usize) -> Perm {
        Perm::from_fn(n, |x| (n - x) % n)
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(group_closure(&[cyc(5)], 100).unwrap().len(), 5);
        assert_eq!(group_closure(&[cyc(5), refl(5)], 100).unwrap().len(), 10);
        assert_eq!(group_closure(&[cyc(5)], 3), Err(PermError::CapExceeded(3)));
        assert_eq!(group_closure(&[], 3), Err(PermError::NoGenerators));
        assert_eq!(
            group_closure(&[cyc(5), cyc(4)], 10),
            Err(PermError::DegreeMismatch(5, 4))
        );
    }

    #[test]
    fn composition_reads_left_to_right() {
        let a = Perm::from_images(vec![1, 0, 2]).unwrap();
        let b = Perm::from_images(vec![0, 2, 1]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(b.then(&a).apply(0), 1);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(cyc(7).pow(7), Perm::identity(7));
        assert_eq!(cyc(7).pow(3).apply(5), 1);
    }

    #[test]
    fn rejects_non_bijection() {
        assert_eq!(Perm::from_images(vec![0, 0, 1]), Err(PermError::NotBijective(3)));
        assert_eq!(Perm::from_images(vec![0, 3]), Err(PermError::NotBijective(2)));
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(Perm::identity(4).cycle_string(), "()");
        assert_eq!(cyc(3).cycle_string(), "(0 1 2)");
        let p = Perm::from_images(vec![1, 0, 2, 4, 3]).unwrap();
        assert_eq!(p.cycle_string(), "(0 1)(3 4)");
        assert_eq!(p.fixed_points(), 1);
    }
}
