//! Permutations on `{0, ..., n-1}` in one-line notation, plus the samplers
//! and enumerators the oracle constructions need.

use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A permutation stored in one-line notation: `map[x]` is the image of `x`.
/// Serializes as a plain JSON array of integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    map: Vec<usize>,
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = Vec::<usize>::deserialize(d)?;
        Permutation::from_vec(map).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.map)
    }
}

impl Permutation {
    pub fn from_vec(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("image list {map:?} is not a bijection"),
                });
            }
            seen[v] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    /// Multiset of cycle lengths, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// True if the permutation is a perfect matching: an involution with no
    /// fixed points (all cycles of length 2).
    pub fn is_matching(&self) -> bool {
        self.n() % 2 == 0 && self.cycle_type().iter().all(|&c| c == 2)
    }

    pub fn is_single_cycle(&self) -> bool {
        self.cycle_type() == [self.n()]
    }

    pub fn uniform<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(rng);
        Self { map }
    }

    /// Uniform perfect matching on `{0, ..., n-1}`; `n` must be even.
    pub fn uniform_matching<R: Rng>(n: usize, rng: &mut R) -> Self {
        assert!(n % 2 == 0);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut map = vec![0; n];
        for pair in order.chunks(2) {
            map[pair[0]] = pair[1];
            map[pair[1]] = pair[0];
        }
        Self { map }
    }

    /// Uniform single n-cycle.
    pub fn uniform_cycle<R: Rng>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 2);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut map = vec![0; n];
        for i in 0..n {
            map[order[i]] = order[(i + 1) % n];
        }
        Self { map }
    }

    /// All permutations of size `n` in lexicographic order of their one-line
    /// notation. Intended for exhaustive checks at small `n`.
    pub fn enumerate(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { map: cur.clone() });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// All perfect matchings on `{0, ..., n-1}`.
    pub fn enumerate_matchings(n: usize) -> Vec<Self> {
        assert!(n % 2 == 0);
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; n];
        fn rec(map: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            let Some(u) = map.iter().position(|&v| v == usize::MAX) else {
                out.push(Permutation { map: map.clone() });
                return;
            };
            for v in u + 1..map.len() {
                if map[v] == usize::MAX {
                    map[u] = v;
                    map[v] = u;
                    rec(map, out);
                    map[u] = usize::MAX;
                    map[v] = usize::MAX;
                }
            }
        }
        rec(&mut map, &mut out);
        out
    }

    /// All single n-cycles.
    pub fn enumerate_cycles(n: usize) -> Vec<Self> {
        Self::enumerate(n)
            .into_iter()
            .filter(|p| p.is_single_cycle())
            .collect()
    }
}

/// A tuple of permutations over possibly different component sizes, used both
/// for raw oracle inputs and as the outcome space of tuple distributions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PermTuple {
    pub components: Vec<Permutation>,
}

impl PermTuple {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(|p| p.n()).collect()
    }

    pub fn invert(&self) -> Self {
        Self {
            components: self.components.iter().map(|p| p.inverse()).collect(),
        }
    }
}

/// Uniform injection of a `k`-tuple into `targets` (ordered, no repeats).
pub fn uniform_injection<R: Rng>(k: usize, targets: &[usize], rng: &mut R) -> Vec<usize> {
    assert!(k <= targets.len());
    let mut pool = targets.to_vec();
    pool.shuffle(rng);
    pool.truncate(k);
    pool
}

/// Uniform bijection between two equally-sized sets, returned as a map.
pub fn uniform_bijection<R: Rng>(
    domain: &[usize],
    codomain: &[usize],
    rng: &mut R,
) -> BTreeMap<usize, usize> {
    assert_eq!(domain.len(), codomain.len());
    let mut targets = codomain.to_vec();
    targets.shuffle(rng);
    domain.iter().copied().zip(targets).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use std::collections::HashSet;

    #[test]
    fn compose_matches_cycle_example() {
        // (0 1) then (1 2) applied right-to-left gives the 3-cycle 0->1->2->0.
        let p = Permutation::from_vec(vec![1, 0, 2]).unwrap();
        let q = Permutation::from_vec(vec![0, 2, 1]).unwrap();
        assert_eq!(p.compose(&q).as_slice(), &[1, 2, 0]);
        assert_eq!(p.compose(&q).cycle_type(), vec![3]);
    }

    #[test]
    fn inverse_roundtrip() {
        let mut r = rng::seeded(7);
        for _ in 0..50 {
            let p = Permutation::uniform(9, &mut r);
            assert_eq!(p.compose(&p.inverse()), Permutation::identity(9));
            assert_eq!(p.inverse().compose(&p), Permutation::identity(9));
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_vec(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_vec(vec![0, 3]).is_err());
    }

    #[test]
    fn matching_recognition() {
        let m = Permutation::from_vec(vec![1, 0, 3, 2]).unwrap();
        assert!(m.is_matching());
        assert_eq!(m.cycle_type(), vec![2, 2]);
        assert!(!Permutation::identity(4).is_matching());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::enumerate(4).len(), 24);
        assert_eq!(Permutation::enumerate_matchings(4).len(), 3);
        assert_eq!(Permutation::enumerate_matchings(6).len(), 15);
        assert_eq!(Permutation::enumerate_cycles(4).len(), 6);
    }

    #[test]
    fn samplers_hit_whole_support_at_n4() {
        let mut r = rng::seeded(11);
        let matchings: HashSet<_> = (0..200)
            .map(|_| Permutation::uniform_matching(4, &mut r))
            .collect();
        assert_eq!(matchings.len(), 3);
        let cycles: HashSet<_> = (0..500)
            .map(|_| Permutation::uniform_cycle(4, &mut r))
            .collect();
        assert_eq!(cycles.len(), 6);
        for c in &cycles {
            assert!(c.is_single_cycle());
        }
    }

    #[test]
    fn uniform_sampler_chi2() {
        let mut r = rng::seeded(3);
        let all = Permutation::enumerate(4);
        let mut counts = vec![0u64; all.len()];
        let trials = 24_000;
        for _ in 0..trials {
            let p = Permutation::uniform(4, &mut r);
            let idx = all.iter().position(|q| *q == p).unwrap();
            counts[idx] += 1;
        }
        let expected = vec![trials as f64 / all.len() as f64; all.len()];
        assert!(crate::stats::chi2_pvalue(&counts, &expected) > 0.001);
    }

    #[test]
    fn serde_is_plain_array() {
        let p = Permutation::from_vec(vec![2, 0, 1]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,0,1]");
        let q: Permutation = serde_json::from_str("[2,0,1]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }
}
