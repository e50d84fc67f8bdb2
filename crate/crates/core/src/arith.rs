//! Modular arithmetic over `Z_n` and small multiplicative-subgroup utilities.
//!
//! Everything here works on residues normalized to `[0, n)`. The unit groups
//! involved are tiny (at most `φ(n)` elements), so closures and subgroup
//! searches are done by direct enumeration.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{a} is not a unit modulo {n}")]
    NotAUnit { a: u32, n: u32 },
    #[error("{members:?} is not a multiplicative subgroup of Z_{n}^*")]
    NotSubgroup { n: u32, members: Vec<u32> },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Reduce a signed integer into `[0, n)`.
pub fn normalize(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

pub fn mul_mod(a: u32, b: u32, n: u32) -> u32 {
    ((a as u64 * b as u64) % n as u64) as u32
}

pub fn neg_mod(a: u32, n: u32) -> u32 {
    (n - a % n) % n
}

pub fn is_unit(a: u32, n: u32) -> bool {
    n >= 1 && gcd((a % n) as u64, n as u64) == 1
}

/// A sorted, duplicate-free set of units modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UnitSet {
    n: u32,
    members: Vec<u32>,
}

impl UnitSet {
    /// Builds a unit set, normalizing and deduplicating the given residues.
    pub fn new(n: u32, members: impl IntoIterator<Item = u32>) -> Result<Self, ArithError> {
        let mut set = BTreeSet::new();
        for a in members {
            let a = if n == 0 { a } else { a % n };
            if !is_unit(a, n) {
                return Err(ArithError::NotAUnit { a, n });
            }
            set.insert(a);
        }
        Ok(UnitSet {
            n,
            members: set.into_iter().collect(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.n != 0 && self.members.binary_search(&(a % self.n)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }
}

/// All residues in `[1, n-1]` coprime to `n`.
pub fn units(n: u32) -> UnitSet {
    UnitSet {
        n,
        members: (1..n).filter(|&a| gcd(a as u64, n as u64) == 1).collect(),
    }
}

/// Multiplicative inverse of `a` modulo `n`.
pub fn inv_mod(a: u32, n: u32) -> Result<u32, ArithError> {
    let a = a % n.max(1);
    if !is_unit(a, n) {
        return Err(ArithError::NotAUnit { a, n });
    }
    // extended Euclid on signed values
    let (mut old_r, mut r) = (a as i64, n as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    Ok(normalize(old_s, n))
}

/// Multiplicative order of the unit `a` modulo `n`.
pub fn mult_order(a: u32, n: u32) -> Result<u32, ArithError> {
    if !is_unit(a, n) {
        return Err(ArithError::NotAUnit { a, n });
    }
    let one = 1 % n;
    let mut x = a % n;
    let mut k = 1;
    while x != one {
        x = mul_mod(x, a, n);
        k += 1;
    }
    Ok(k)
}

/// Smallest multiplicatively closed subset of `Z_n^*` containing `seed` and 1.
pub fn mult_closure(n: u32, seed: &[u32]) -> Result<UnitSet, ArithError> {
    for &a in seed {
        if !is_unit(a, n) {
            return Err(ArithError::NotAUnit { a: a % n.max(1), n });
        }
    }
    let seed: Vec<u32> = seed.iter().map(|&a| a % n).collect();
    let mut seen = BTreeSet::new();
    let mut queue = vec![1 % n];
    seen.insert(1 % n);
    while let Some(x) = queue.pop() {
        for &g in &seed {
            let y = mul_mod(x, g, n);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    Ok(UnitSet {
        n,
        members: seen.into_iter().collect(),
    })
}

/// True iff `set` is a nonempty set of units closed under multiplication mod `n`.
pub fn is_mult_subgroup(n: u32, set: &[u32]) -> bool {
    if set.is_empty() || n == 0 {
        return false;
    }
    let members: BTreeSet<u32> = set.iter().map(|&a| a % n).collect();
    if members.iter().any(|&a| !is_unit(a, n)) {
        return false;
    }
    members
        .iter()
        .all(|&a| members.iter().all(|&b| members.contains(&mul_mod(a, b, n))))
}

/// A small generating set for the subgroup `h`, chosen greedily.
///
/// Elements already generated by `base` are never picked. Candidates are
/// tried by decreasing multiplicative order, then by value, so a cyclic group
/// comes back with a single generator.
pub fn generating_set(h: &UnitSet, base: &[u32]) -> Result<Vec<u32>, ArithError> {
    let n = h.modulus();
    let mut candidates: Vec<(u32, u32)> = h
        .iter()
        .map(|a| mult_order(a, n).map(|o| (o, a)))
        .collect::<Result<_, _>>()?;
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut seed: Vec<u32> = base.to_vec();
    let mut current = mult_closure(n, &seed)?;
    let mut gens = Vec::new();
    for (_, a) in candidates {
        if current.len() == h.len() {
            break;
        }
        if !current.contains(a) {
            gens.push(a);
            seed.push(a);
            current = mult_closure(n, &seed)?;
        }
    }
    Ok(gens)
}

/// Looks for an index-2 subgroup of `h` that does not contain `x`.
///
/// Index-2 subgroups are exactly the kernels of surjections `h -> {±1}`;
/// those are enumerated through sign assignments on a generating set. When
/// several kernels qualify, the lexicographically smallest one is returned.
pub fn has_index2_excluding(n: u32, h: &UnitSet, x: u32) -> Result<Option<UnitSet>, ArithError> {
    if !is_mult_subgroup(n, h.members()) {
        return Err(ArithError::NotSubgroup {
            n,
            members: h.members().to_vec(),
        });
    }
    if h.len() % 2 == 1 {
        return Ok(None);
    }
    let gens = generating_set(h, &[])?;
    let mut best: Option<Vec<u32>> = None;
    for mask in 1u64..(1u64 << gens.len()) {
        let Some(kernel) = sign_kernel(n, h, &gens, mask) else {
            continue;
        };
        if kernel.binary_search(&(x % n)).is_ok() {
            continue;
        }
        if best.as_ref().is_none_or(|b| kernel < *b) {
            best = Some(kernel);
        }
    }
    Ok(best.map(|members| UnitSet { n, members }))
}

// Kernel of the homomorphism sending gens[i] to -1 iff bit i of mask is set,
// or None if that assignment does not extend to a homomorphism.
fn sign_kernel(n: u32, h: &UnitSet, gens: &[u32], mask: u64) -> Option<Vec<u32>> {
    let index = |a: u32| h.members().binary_search(&a).ok();
    let mut sign: Vec<Option<bool>> = vec![None; h.len()];
    sign[index(1 % n)?] = Some(true);
    let mut queue = vec![1 % n];
    while let Some(e) = queue.pop() {
        let se = sign[index(e)?]?;
        for (i, &g) in gens.iter().enumerate() {
            let sg = mask & (1 << i) == 0;
            let p = mul_mod(e, g, n);
            let slot = &mut sign[index(p)?];
            match slot {
                Some(existing) if *existing != (se == sg) => return None,
                Some(_) => {}
                None => {
                    *slot = Some(se == sg);
                    queue.push(p);
                }
            }
        }
    }
    Some(
        h.iter()
            .zip(sign)
            .filter(|(_, s)| *s == Some(true))
            .map(|(a, _)| a)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn units_examples() {
        assert_eq!(units(7).members(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(units(12).members(), &[1, 5, 7, 11]);
        assert!(units(1).is_empty());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inv_mod(2, 7), Ok(4));
        assert_eq!(inv_mod(5, 12), Ok(5));
        assert_eq!(inv_mod(2, 10), Err(ArithError::NotAUnit { a: 2, n: 10 }));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(mult_closure(7, &[2]).unwrap().members(), &[1, 2, 4]);
        assert_eq!(mult_closure(11, &[1]).unwrap().members(), &[1]);
        assert_eq!(mult_closure(13, &[5]).unwrap().members(), &[1, 5, 8, 12]);
        assert!(mult_closure(10, &[3, 4]).is_err());
    }

    #[test]
    fn subgroup_examples() {
        assert!(is_mult_subgroup(7, &[1, 2, 3, 4, 5, 6]));
        assert!(!is_mult_subgroup(5, &[1, 2]));
        assert!(!is_mult_subgroup(10, &[1, 2, 8, 9]));
        assert!(!is_mult_subgroup(10, &[]));
    }

    #[test]
    fn index_two_examples() {
        let h = UnitSet::new(8, [1, 3, 5, 7]).unwrap();
        let k = has_index2_excluding(8, &h, 7).unwrap().unwrap();
        assert_eq!(k.members(), &[1, 3]);

        let h = units(5);
        assert_eq!(has_index2_excluding(5, &h, 4).unwrap(), None);

        let h = units(13);
        assert_eq!(has_index2_excluding(13, &h, 12).unwrap(), None);

        let not_group = UnitSet::new(5, [1, 2]).unwrap();
        assert!(matches!(
            has_index2_excluding(5, &not_group, 2),
            Err(ArithError::NotSubgroup { .. })
        ));
    }

    #[test]
    fn index_two_mod_seven_squares() {
        // 7 ≡ 3 mod 4, so -1 is a non-square and the squares exclude it
        let k = has_index2_excluding(7, &units(7), 6).unwrap().unwrap();
        assert_eq!(k.members(), &[1, 2, 4]);
    }

    #[test]
    fn cyclic_group_has_single_generator() {
        assert_eq!(generating_set(&units(7), &[]).unwrap(), vec![3]);
        assert_eq!(generating_set(&units(7), &[6]).unwrap(), vec![3]);
        assert!(generating_set(&units(4), &[3]).unwrap().is_empty());
    }

    fn brute_index_two(n: u32, h: &[u32], x: u32) -> bool {
        // every subset of half size, checked for closure
        let m = h.len();
        if m % 2 == 1 {
            return false;
        }
        (0u32..(1 << m)).any(|mask| {
            if mask.count_ones() as usize != m / 2 {
                return false;
            }
            let k: Vec<u32> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| h[i]).collect();
            is_mult_subgroup(n, &k) && !k.contains(&x)
        })
    }

    proptest! {
        #[test]
        fn inverse_is_involutive(n in 2u32..200, a in 1u32..200) {
            let a = a % n;
            prop_assume!(is_unit(a, n));
            let b = inv_mod(a, n).unwrap();
            prop_assert_eq!(mul_mod(a, b, n), 1 % n);
            prop_assert_eq!(inv_mod(b, n).unwrap(), a);
        }

        #[test]
        fn closure_is_subgroup(n in 2u32..60, seed in proptest::collection::vec(1u32..60, 0..4)) {
            let seed: Vec<u32> = seed.into_iter().map(|a| a % n).filter(|&a| is_unit(a, n)).collect();
            let c = mult_closure(n, &seed).unwrap();
            prop_assert!(is_mult_subgroup(n, c.members()));
            for a in &seed {
                prop_assert!(c.contains(*a));
            }
        }

        #[test]
        fn index_two_witness_is_valid(n in 3u32..40, seed in proptest::collection::vec(1u32..40, 1..3)) {
            let mut seed: Vec<u32> = seed.into_iter().map(|a| a % n).filter(|&a| is_unit(a, n)).collect();
            seed.push(n - 1);
            let h = mult_closure(n, &seed).unwrap();
            let x = n - 1;
            let found = has_index2_excluding(n, &h, x).unwrap();
            if h.len() % 2 == 1 {
                prop_assert!(found.is_none());
            }
            if let Some(k) = &found {
                prop_assert!(is_mult_subgroup(n, k.members()));
                prop_assert_eq!(k.len() * 2, h.len());
                prop_assert!(!k.contains(x));
            }
            if h.len() <= 12 {
                prop_assert_eq!(found.is_some(), brute_index_two(n, h.members(), x));
            }
        }
    }
}
