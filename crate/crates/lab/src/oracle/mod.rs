//! Graph oracles `F : [R] x [N] -> [N]` whose rows are perfect matchings,
//! together with the raw-permutation presentation and instance samplers.

pub mod spectral;
pub mod walk;

use crate::perm::Permutation;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// An oracle with `r` rows, each a perfect matching on `{0, ..., n-1}`.
/// The union of the rows is an `r`-regular multigraph on the vertex set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GraphOracle {
    n: usize,
    r: usize,
    table: Vec<Permutation>,
}

impl<'de> Deserialize<'de> for GraphOracle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            r: usize,
            table: Vec<Permutation>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.table.len() != raw.r {
            return Err(serde::de::Error::custom("row count does not match r"));
        }
        GraphOracle::new(raw.n, raw.table).map_err(serde::de::Error::custom)
    }
}

impl GraphOracle {
    pub fn new(n: usize, table: Vec<Permutation>) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidOracle(format!("n = {n} must be even and positive")));
        }
        for (r, row) in table.iter().enumerate() {
            if row.n() != n {
                return Err(Error::InvalidOracle(format!("row {r} has wrong size")));
            }
            if !row.is_matching() {
                return Err(Error::InvalidOracle(format!("row {r} is not a perfect matching")));
            }
        }
        let r = table.len();
        Ok(Self { n, r, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn eval(&self, r: usize, x: usize) -> usize {
        self.table[r].apply(x)
    }

    pub fn row(&self, r: usize) -> &Permutation {
        &self.table[r]
    }

    pub fn rows(&self) -> &[Permutation] {
        &self.table
    }

    /// Connected-component label for every vertex, labels numbered by first
    /// occurrence.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] != x {
                parent[x] = find(parent, parent[x]);
            }
            parent[x]
        }
        for row in &self.table {
            for x in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, row.apply(x)));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let roots: Vec<usize> = (0..self.n).map(|x| find(&mut parent, x)).collect();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.n);
        for root in roots {
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            out.push(label[root]);
        }
        out
    }

    /// Vertex sets of the connected components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut comps = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            comps[l].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True when some union of connected components has exactly n/2
    /// vertices: the defining property of a yes instance (no row crosses the
    /// partition; the sides themselves need not be connected).
    pub fn is_yes(&self) -> bool {
        self.yes_partition().is_ok()
    }

    /// A balanced component grouping containing vertex 0, sorted, found by
    /// subset-sum over component sizes. Errors when none exists.
    pub fn yes_partition(&self) -> Result<Vec<usize>> {
        let comps = self.components();
        let zero_comp = self
            .component_labels()[0];
        let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        let target = self.n / 2;
        if sizes[zero_comp] > target {
            return Err(Error::InvalidOracle("not a yes instance".into()));
        }
        // 2-D subset-sum DP over the other components, then backtrack.
        let others: Vec<usize> = (0..comps.len()).filter(|&i| i != zero_comp).collect();
        let need = target - sizes[zero_comp];
        let mut reach = vec![vec![false; need + 1]; others.len() + 1];
        reach[0][0] = true;
        for (i, &ci) in others.iter().enumerate() {
            let s = sizes[ci];
            for t in 0..=need {
                reach[i + 1][t] = reach[i][t] || (s <= t && reach[i][t - s]);
            }
        }
        if !reach[others.len()][need] {
            return Err(Error::InvalidOracle("not a yes instance".into()));
        }
        let mut chosen = vec![zero_comp];
        let mut t = need;
        for i in (0..others.len()).rev() {
            if !reach[i][t] {
                let ci = others[i];
                chosen.push(ci);
                t -= sizes[ci];
            }
        }
        assert_eq!(t, 0);
        let mut side: Vec<usize> = chosen.into_iter().flat_map(|ci| comps[ci].clone()).collect();
        side.sort_unstable();
        Ok(side)
    }

    /// Every balanced component grouping containing vertex 0 (exponential in
    /// the component count; small instances only).
    pub fn balanced_partitions(&self) -> Vec<Vec<usize>> {
        let comps = self.components();
        let zero_comp = self.component_labels()[0];
        let others: Vec<usize> = (0..comps.len()).filter(|&i| i != zero_comp).collect();
        assert!(others.len() <= 20);
        let target = self.n / 2;
        let mut out = Vec::new();
        for mask in 0..1usize << others.len() {
            let mut size = comps[zero_comp].len();
            for (i, &ci) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    size += comps[ci].len();
                }
            }
            if size == target {
                let mut side = comps[zero_comp].clone();
                for (i, &ci) in others.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        side.extend(&comps[ci]);
                    }
                }
                side.sort_unstable();
                out.push(side);
            }
        }
        out.sort();
        out
    }
}

/// A yes instance: an oracle together with its planted balanced partition
/// (the side containing vertex 0). Distinct instances can share a table when
/// the sides are disconnected enough to admit several groupings.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct YesInstance {
    pub oracle: GraphOracle,
    pub partition: Vec<usize>,
}

/// Uniform yes instance: a uniform unordered balanced partition, then an
/// independent uniform matching inside each side for every row.
pub fn sample_yes<R: Rng>(n: usize, r: usize, rng: &mut R) -> YesInstance {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    let mut s = vec![0];
    s.extend(&rest[..n / 2 - 1]);
    s.sort_unstable();
    let sbar: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    let table = (0..r)
        .map(|_| matching_on_parts(n, &s, &sbar, rng))
        .collect();
    YesInstance {
        oracle: GraphOracle::new(n, table).unwrap(),
        partition: s,
    }
}

/// Uniform no-side sample: every row an independent uniform matching on the
/// whole vertex set.
pub fn sample_uniform<R: Rng>(n: usize, r: usize, rng: &mut R) -> GraphOracle {
    let table = (0..r).map(|_| Permutation::uniform_matching(n, rng)).collect();
    GraphOracle::new(n, table).unwrap()
}

fn matching_on_parts<R: Rng>(n: usize, s: &[usize], sbar: &[usize], rng: &mut R) -> Permutation {
    let mut map = vec![0; n];
    for part in [s, sbar] {
        let mut order = part.to_vec();
        order.shuffle(rng);
        for pair in order.chunks(2) {
            map[pair[0]] = pair[1];
            map[pair[1]] = pair[0];
        }
    }
    Permutation::from_vec(map).unwrap()
}

/// Every yes instance at the given size: each unordered balanced partition
/// (side of vertex 0) with every combination of per-side matchings. Tables
/// can repeat across partitions.
pub fn enumerate_yes(n: usize, r: usize) -> Vec<YesInstance> {
    let mut out = Vec::new();
    let rest: Vec<usize> = (1..n).collect();
    for combo in combinations(&rest, n / 2 - 1) {
        let mut s = vec![0];
        s.extend(combo);
        s.sort_unstable();
        let sbar: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        let ms = matchings_on(&s, n);
        let mbar = matchings_on(&sbar, n);
        let mut rows: Vec<Vec<Permutation>> = vec![Vec::new()];
        for _ in 0..r {
            let mut next = Vec::new();
            for prefix in &rows {
                for a in &ms {
                    for b in &mbar {
                        let mut map = vec![0; n];
                        for &v in &s {
                            map[v] = a[&v];
                        }
                        for &v in &sbar {
                            map[v] = b[&v];
                        }
                        let mut row_set = prefix.clone();
                        row_set.push(Permutation::from_vec(map).unwrap());
                        next.push(row_set);
                    }
                }
            }
            rows = next;
        }
        for table in rows {
            out.push(YesInstance {
                oracle: GraphOracle::new(n, table).unwrap(),
                partition: s.clone(),
            });
        }
    }
    out
}

fn matchings_on(vertices: &[usize], _n: usize) -> Vec<std::collections::BTreeMap<usize, usize>> {
    let k = vertices.len();
    let base = Permutation::enumerate_matchings(k);
    base.into_iter()
        .map(|m| {
            (0..k)
                .map(|i| (vertices[i], vertices[m.apply(i)]))
                .collect()
        })
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    items.iter().copied().combinations(k).collect()
}

/// The raw presentation: an outer relabeling `x` on `[n]` plus per-row inner
/// permutations `y[r]`, `z[r]` on `[n/2]` for the two halves.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RawPermutations {
    pub x: Permutation,
    pub y: Vec<Permutation>,
    pub z: Vec<Permutation>,
}

impl RawPermutations {
    pub fn identity(n: usize, r: usize) -> Self {
        Self {
            x: Permutation::identity(n),
            y: vec![Permutation::identity(n / 2); r],
            z: vec![Permutation::identity(n / 2); r],
        }
    }

    pub fn uniform<R: Rng>(n: usize, r: usize, rng: &mut R) -> Self {
        Self {
            x: Permutation::uniform(n, rng),
            y: (0..r).map(|_| Permutation::uniform(n / 2, rng)).collect(),
            z: (0..r).map(|_| Permutation::uniform(n / 2, rng)).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.x.n();
        if n % 2 != 0 || self.y.len() != self.z.len() {
            return Err(Error::InvalidOracle("malformed raw tuple".into()));
        }
        for p in self.y.iter().chain(&self.z) {
            if p.n() != n / 2 {
                return Err(Error::InvalidOracle("inner permutation has wrong size".into()));
            }
        }
        Ok(())
    }
}

/// Build the graph oracle an honest prover presents for a raw tuple.
///
/// A query `x` is routed through four steps: pull back through the outer
/// relabeling, pick the half, pull back through that half's inner
/// permutation, flip the last bit of the slot index, and push forward again.
pub fn raw_to_oracle(raw: &RawPermutations) -> Result<GraphOracle> {
    raw.validate()?;
    let n = raw.x.n();
    let half = n / 2;
    let xinv = raw.x.inverse();
    let mut table = Vec::with_capacity(raw.y.len());
    for r in 0..raw.y.len() {
        let mut map = vec![0; n];
        for xval in 0..n {
            let i = xinv.apply(xval);
            let (w, u, offset) = if i < half {
                (&raw.y[r], i, 0)
            } else {
                (&raw.z[r], i - half, half)
            };
            let s = w.inverse().apply(u);
            let v = w.apply(s ^ 1);
            map[xval] = raw.x.apply(v + offset);
        }
        table.push(Permutation::from_vec(map).map_err(|e| {
            Error::InvalidOracle(format!("raw evaluation is not a bijection: {e}"))
        })?);
    }
    GraphOracle::new(n, table)
}

/// The yes instance a raw tuple presents: the oracle plus the planted
/// partition, which is the outer relabeling's image of the first half
/// (complemented if needed so the side contains vertex 0).
pub fn raw_instance(raw: &RawPermutations) -> Result<YesInstance> {
    let oracle = raw_to_oracle(raw)?;
    let n = raw.x.n();
    let mut side: Vec<usize> = (0..n / 2).map(|i| raw.x.apply(i)).collect();
    if !side.contains(&0) {
        side = (n / 2..n).map(|i| raw.x.apply(i)).collect();
    }
    side.sort_unstable();
    Ok(YesInstance { oracle, partition: side })
}

/// All raw tuples at the given size (exhaustive, tiny sizes only).
pub fn enumerate_raw(n: usize, r: usize) -> Vec<RawPermutations> {
    let outer = Permutation::enumerate(n);
    let inner = Permutation::enumerate(n / 2);
    let mut inner_tuples: Vec<Vec<Permutation>> = vec![Vec::new()];
    for _ in 0..2 * r {
        let mut next = Vec::new();
        for t in &inner_tuples {
            for p in &inner {
                let mut t2 = t.clone();
                t2.push(p.clone());
                next.push(t2);
            }
        }
        inner_tuples = next;
    }
    let mut out = Vec::new();
    for x in &outer {
        for t in &inner_tuples {
            out.push(RawPermutations {
                x: x.clone(),
                y: t[..r].to_vec(),
                z: t[r..].to_vec(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use std::collections::HashMap;

    #[test]
    fn identity_raw_gives_adjacent_transpositions() {
        let oracle = raw_to_oracle(&RawPermutations::identity(4, 1)).unwrap();
        assert_eq!(oracle.row(0).as_slice(), &[1, 0, 3, 2]);
        assert!(oracle.is_yes());
        assert_eq!(oracle.yes_partition().unwrap(), vec![0, 1]);
    }

    #[test]
    fn raw_rows_are_matchings_and_yes() {
        let mut r = rng::seeded(5);
        for _ in 0..100 {
            let raw = RawPermutations::uniform(8, 2, &mut r);
            let inst = raw_instance(&raw).unwrap();
            assert!(inst.oracle.is_yes());
            assert_eq!(inst.partition.len(), 4);
            // No row edge crosses the planted partition.
            for rr in 0..2 {
                for &v in &inst.partition {
                    assert!(inst.partition.contains(&inst.oracle.eval(rr, v)));
                }
            }
        }
    }

    #[test]
    fn raw_surjects_with_equal_fibers_n4() {
        let raws = enumerate_raw(4, 1);
        assert_eq!(raws.len(), 96);
        let mut fibers: HashMap<GraphOracle, usize> = HashMap::new();
        for raw in &raws {
            *fibers.entry(raw_to_oracle(raw).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(fibers.len(), 3);
        assert!(fibers.values().all(|&c| c == 32));
        let yes = enumerate_yes(4, 1);
        assert_eq!(yes.len(), 3);
        for inst in &yes {
            assert!(fibers.contains_key(&inst.oracle));
        }
    }

    #[test]
    fn raw_surjects_with_equal_fibers_n8() {
        // Exhausting all 8! * 24 * 24 tuples directly is wasteful: the row
        // only depends on the inner permutations through the matching
        // w(flip(w^{-1}(.))). First verify that every matching on the half
        // arises from equally many inner permutations, then exhaust over
        // (outer, half-matching, half-matching).
        let inner = Permutation::enumerate(4);
        let mut per_matching: HashMap<Permutation, usize> = HashMap::new();
        for w in &inner {
            let winv = w.inverse();
            let m = Permutation::from_vec(
                (0..4).map(|u| w.apply(winv.apply(u) ^ 1)).collect(),
            )
            .unwrap();
            *per_matching.entry(m).or_insert(0) += 1;
        }
        assert_eq!(per_matching.len(), 3);
        assert!(per_matching.values().all(|&c| c == 8));

        let mut fibers: HashMap<GraphOracle, usize> = HashMap::new();
        for x in Permutation::enumerate(8) {
            let xinv = x.inverse();
            for ma in per_matching.keys() {
                for mb in per_matching.keys() {
                    let mut map = vec![0; 8];
                    for xval in 0..8 {
                        let i = xinv.apply(xval);
                        let v = if i < 4 { ma.apply(i) } else { mb.apply(i - 4) + 4 };
                        map[xval] = x.apply(v);
                    }
                    let o =
                        GraphOracle::new(8, vec![Permutation::from_vec(map).unwrap()]).unwrap();
                    *fibers.entry(o).or_insert(0) += 1;
                }
            }
        }
        // Every table is a matching on 8 points: 105 of them, equal fibers.
        assert_eq!(fibers.len(), 105);
        let expected = 40320 * 9 / 105;
        assert!(fibers.values().all(|&c| c == expected));
        // Each enumerated instance's table is hit.
        for inst in enumerate_yes(8, 1) {
            assert!(fibers.contains_key(&inst.oracle));
        }
    }

    #[test]
    fn enumerate_yes_counts() {
        assert_eq!(enumerate_yes(4, 1).len(), 3);
        assert_eq!(enumerate_yes(4, 2).len(), 3);
        // 35 partitions with 0 fixed in S, 3 matchings per side: 35 * 9.
        assert_eq!(enumerate_yes(8, 1).len(), 315);
    }

    #[test]
    fn component_structure() {
        let mut r = rng::seeded(9);
        let inst = sample_yes(16, 3, &mut r);
        assert!(inst.oracle.is_yes());
        assert_eq!(inst.partition.len(), 8);
        // The planted side is a union of components, so some balanced
        // grouping recovers it.
        assert!(inst.oracle.balanced_partitions().contains(&inst.partition));
        // A single-matching oracle has n/2 components and several balanced
        // groupings.
        let single = GraphOracle::new(8, vec![Permutation::from_vec(vec![1, 0, 3, 2, 5, 4, 7, 6]).unwrap()]).unwrap();
        assert_eq!(single.components().len(), 4);
        assert_eq!(single.balanced_partitions().len(), 3);
        assert!(single.is_yes());
    }

    #[test]
    fn serde_roundtrip_and_validation() {
        let mut r = rng::seeded(2);
        let o = sample_uniform(8, 2, &mut r);
        let s = serde_json::to_string(&o).unwrap();
        let back: GraphOracle = serde_json::from_str(&s).unwrap();
        assert_eq!(o, back);
        // A row that is a permutation but not a matching must be rejected.
        let bad = r#"{"n":4,"r":1,"table":[[1,2,3,0]]}"#;
        assert!(serde_json::from_str::<GraphOracle>(bad).is_err());
    }
}
