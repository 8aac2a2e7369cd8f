//! Relation counting for the query lower bound: yes objects are
//! permutations made of one cycle on each side of a balanced partition, no
//! objects are single N-cycles, and the relation connects a yes object to
//! the no objects obtained by cutting one edge in each cycle and splicing
//! the cycles together.

use crate::perm::Permutation;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RelationCounts {
    /// Related no objects per yes object.
    pub m: usize,
    /// Related yes objects per no object.
    pub m_prime: usize,
    /// Worst-case count, over (yes object, input), of related no objects
    /// disagreeing at that input.
    pub l_x: usize,
    /// Same from the no side.
    pub l_y: usize,
    pub x_count: usize,
    pub y_count: usize,
    pub pairs: u64,
}

impl RelationCounts {
    /// The adversary-method value sqrt(m m' / (l_x l_y)).
    pub fn bound(&self) -> f64 {
        ((self.m * self.m_prime) as f64 / (self.l_x * self.l_y) as f64).sqrt()
    }
}

/// All no-neighbors of a two-cycle permutation: redirect one edge from each
/// cycle into the other cycle.
pub fn splice_neighbors(p: &Permutation) -> Vec<Permutation> {
    let n = p.n();
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v);
            v = p.apply(v);
        }
        cycles.push(cyc);
    }
    assert_eq!(cycles.len(), 2, "yes objects have exactly two cycles");
    let mut out = Vec::new();
    for &u1 in &cycles[0] {
        for &u2 in &cycles[1] {
            let mut map: Vec<usize> = (0..n).map(|x| p.apply(x)).collect();
            map[u1] = p.apply(u2);
            map[u2] = p.apply(u1);
            out.push(Permutation::from_vec(map).unwrap());
        }
    }
    out
}

/// All yes-neighbors of a single N-cycle: cut the two edges half a cycle
/// apart (the only cuts that give balanced halves) and reconnect within the
/// halves.
pub fn cut_neighbors(c: &Permutation) -> Vec<Permutation> {
    let n = c.n();
    assert!(c.is_single_cycle());
    let mut order = Vec::with_capacity(n);
    let mut v = 0;
    for _ in 0..n {
        order.push(v);
        v = c.apply(v);
    }
    (0..n / 2)
        .map(|i| {
            let a = order[i];
            let b = order[i + n / 2];
            let mut map: Vec<usize> = (0..n).map(|x| c.apply(x)).collect();
            map[a] = c.apply(b);
            map[b] = c.apply(a);
            Permutation::from_vec(map).unwrap()
        })
        .collect()
}

fn two_cycle_objects(n: usize) -> Vec<Permutation> {
    // One side always contains 0, so each unordered cycle pair appears once.
    let rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    for combo in combinations(&rest, n / 2 - 1) {
        let mut s = vec![0];
        s.extend(&combo);
        let sbar: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        for sa in cycle_orders(&s) {
            for sb in cycle_orders(&sbar) {
                let mut map = vec![0usize; n];
                for (i, &v) in sa.iter().enumerate() {
                    map[v] = sa[(i + 1) % sa.len()];
                }
                for (i, &v) in sb.iter().enumerate() {
                    map[v] = sb[(i + 1) % sb.len()];
                }
                out.push(Permutation::from_vec(map).unwrap());
            }
        }
    }
    out
}

/// All orderings of `vs` starting at vs[0]: one representative per cycle.
fn cycle_orders(vs: &[usize]) -> Vec<Vec<usize>> {
    Permutation::enumerate(vs.len() - 1)
        .into_iter()
        .map(|p| {
            let mut order = vec![vs[0]];
            order.extend((0..vs.len() - 1).map(|i| vs[1 + p.apply(i)]));
            order
        })
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = combinations(&items[1..], k - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, items[0]);
            c
        })
        .collect::<Vec<_>>();
    out.extend(combinations(&items[1..], k));
    out
}

/// Brute-force the relation at small N and report the measured counts.
/// Panics above N = 10 where enumeration stops being reasonable.
pub fn adversary_counts(n: usize) -> RelationCounts {
    assert!(n % 2 == 0 && (4..=10).contains(&n));
    let yes = two_cycle_objects(n);
    let mut m = None;
    let mut l_x = 0usize;
    let mut pairs = 0u64;
    for p in &yes {
        let nb = splice_neighbors(p);
        for s in &nb {
            debug_assert!(s.is_single_cycle());
        }
        match m {
            None => m = Some(nb.len()),
            Some(prev) => assert_eq!(prev, nb.len(), "m varies across yes objects"),
        }
        pairs += nb.len() as u64;
        for i in 0..n {
            let here = nb.iter().filter(|s| s.apply(i) != p.apply(i)).count();
            l_x = l_x.max(here);
        }
    }
    let nocount = factorial(n - 1);
    let mut m_prime = None;
    let mut l_y = 0usize;
    let mut pairs_back = 0u64;
    for c in n_cycles(n) {
        let nb = cut_neighbors(&c);
        match m_prime {
            None => m_prime = Some(nb.len()),
            Some(prev) => assert_eq!(prev, nb.len(), "m' varies across no objects"),
        }
        pairs_back += nb.len() as u64;
        for i in 0..n {
            let here = nb.iter().filter(|p| p.apply(i) != c.apply(i)).count();
            l_y = l_y.max(here);
        }
    }
    assert_eq!(pairs, pairs_back, "relation must count the same both ways");
    RelationCounts {
        m: m.unwrap(),
        m_prime: m_prime.unwrap(),
        l_x,
        l_y,
        x_count: yes.len(),
        y_count: nocount,
        pairs,
    }
}

fn n_cycles(n: usize) -> impl Iterator<Item = Permutation> {
    // Cycle order 0, v_1, ..., v_{n-1}: one representative per cycle.
    Permutation::enumerate(n - 1).into_iter().map(move |p| {
        let mut map = vec![0usize; n];
        let order: Vec<usize> = std::iter::once(0).chain((0..n - 1).map(|i| 1 + p.apply(i))).collect();
        for i in 0..n {
            map[order[i]] = order[(i + 1) % n];
        }
        Permutation::from_vec(map).unwrap()
    })
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measured_counts_follow_the_pattern() {
        for &n in &[4usize, 6, 8, 10] {
            let c = adversary_counts(n);
            assert_eq!(c.m, (n / 2) * (n / 2), "n={n}");
            assert_eq!(c.m_prime, n / 2, "n={n}");
            assert_eq!(c.l_x, n / 2, "n={n}");
            assert_eq!(c.l_y, 1, "n={n}");
            assert_eq!(c.x_count * c.m, c.y_count * c.m_prime);
            assert!((c.bound() - (n / 2) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn splice_and_cut_are_mutually_inverse() {
        for p in two_cycle_objects(6) {
            for s in splice_neighbors(&p) {
                assert!(cut_neighbors(&s).contains(&p));
            }
        }
    }
}
