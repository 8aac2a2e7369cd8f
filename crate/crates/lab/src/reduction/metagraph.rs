//! Distributional checks for the planting step: planting into a uniform
//! fresh instance must land exactly uniformly on the instances consistent
//! with the fixing data, and one planting step is a regular map between
//! consecutive consistency classes.

use super::{GraphFixing, PlantedOracle};
use crate::oracle::{enumerate_yes, sample_yes, GraphOracle, YesInstance};
use crate::perm::{uniform_injection, Permutation};
use crate::rng::LabRng;
use rand::Rng;
use std::collections::HashMap;

/// Relabel `inst` by a permutation pinning the fixed vertices onto
/// `e`/`f`, plant the fixed edges, and return the resulting instance. `e`
/// must lie inside one side of `inst`; the result's partition is the
/// preimage of that side.
pub fn plant_with_targets(
    inst: &YesInstance,
    rho: &GraphFixing,
    e: &[usize],
    f: &[usize],
    pi: &Permutation,
) -> YesInstance {
    let n = inst.oracle.n();
    for (&x, &y) in rho.a.iter().zip(e).chain(rho.b.iter().zip(f)) {
        assert_eq!(pi.apply(x), y);
    }
    let mut planted = PlantedOracle::new(&inst.oracle, pi.clone());
    planted.reconnect(rho);
    let oracle = planted.to_oracle().expect("planting keeps rows matchings");
    let e_in_s = inst.partition.contains(&e[0]);
    let mut side: Vec<usize> = (0..n)
        .filter(|&v| inst.partition.contains(&pi.apply(v)) == e_in_s)
        .collect();
    if !side.contains(&0) {
        side = (0..n).filter(|v| !side.contains(v)).collect();
    }
    side.sort_unstable();
    YesInstance { oracle, partition: side }
}

fn ordered_injections(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(set: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for &v in set {
            if !cur.contains(&v) {
                cur.push(v);
                rec(set, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(set, k, &mut cur, &mut out);
    out
}

/// Enumerate every leaf of the planting tree — (fresh instance, side
/// assignment, ordered targets E and F, relabeling completion), all equally
/// likely under the sampling procedure — and count how often each planted
/// instance appears.
pub fn exhaustive_plant_counts(
    n: usize,
    r: usize,
    rho: &GraphFixing,
) -> HashMap<YesInstance, u64> {
    let mut counts: HashMap<YesInstance, u64> = HashMap::new();
    let free_dom: Vec<usize> = (0..n)
        .filter(|v| !rho.a.contains(v) && !rho.b.contains(v))
        .collect();
    let completions = Permutation::enumerate(free_dom.len());
    for inst in enumerate_yes(n, r) {
        let s = inst.partition.clone();
        let sbar: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        for (side_e, side_f) in [(&s, &sbar), (&sbar, &s)] {
            for e in ordered_injections(side_e, rho.a.len()) {
                for f in ordered_injections(side_f, rho.b.len()) {
                    let mut free_img: Vec<usize> = (0..n)
                        .filter(|v| !e.contains(v) && !f.contains(v))
                        .collect();
                    free_img.sort_unstable();
                    for p in &completions {
                        let mut image = vec![0usize; n];
                        for (&x, &y) in rho.a.iter().zip(&e).chain(rho.b.iter().zip(&f)) {
                            image[x] = y;
                        }
                        for (i, &x) in free_dom.iter().enumerate() {
                            image[x] = free_img[p.apply(i)];
                        }
                        let pi = Permutation::from_vec(image).unwrap();
                        let planted = plant_with_targets(&inst, rho, &e, &f, &pi);
                        *counts.entry(planted).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    counts
}

/// One draw of the planting procedure with fresh randomness everywhere:
/// uniform instance, uniform side, uniform ordered targets, uniform
/// relabeling completion.
pub fn sample_planted(n: usize, r: usize, rho: &GraphFixing, rng: &mut LabRng) -> YesInstance {
    let inst = sample_yes(n, r, rng);
    let s = inst.partition.clone();
    let sbar: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    let (side_e, side_f) = if rng.gen_bool(0.5) { (&s, &sbar) } else { (&sbar, &s) };
    let e = uniform_injection(rho.a.len(), side_e, rng);
    let f = uniform_injection(rho.b.len(), side_f, rng);
    let pi = super::algorithm_m::conditioned_pi(n, &rho.a, &rho.b, &e, &f, rng);
    plant_with_targets(&inst, rho, &e, &f, &pi)
}

/// Apply one planting step for a single fixed edge directly to an instance:
/// match u with v and re-match their displaced partners with each other.
pub fn plant_edge(inst: &YesInstance, edge: (usize, usize, usize)) -> YesInstance {
    let (u, v, r) = edge;
    let x = inst.oracle.eval(r, u);
    let y = inst.oracle.eval(r, v);
    let n = inst.oracle.n();
    let table: Vec<Permutation> = (0..inst.oracle.r())
        .map(|row| {
            let mut map: Vec<usize> = (0..n).map(|w| inst.oracle.eval(row, w)).collect();
            if row == r {
                map[u] = v;
                map[v] = u;
                map[x] = y;
                map[y] = x;
            }
            Permutation::from_vec(map).unwrap()
        })
        .collect();
    YesInstance {
        oracle: GraphOracle::new(n, table).unwrap(),
        partition: inst.partition.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::enumerate_yes_rho;
    use crate::rng;
    use crate::stats::chi2_pvalue;

    fn assert_uniform_over_consistent(
        n: usize,
        r: usize,
        rho: &GraphFixing,
        expected_cells: usize,
    ) {
        let counts = exhaustive_plant_counts(n, r, rho);
        let consistent = enumerate_yes_rho(n, r, rho);
        assert_eq!(consistent.len(), expected_cells);
        assert_eq!(counts.len(), consistent.len());
        let per_cell: Vec<u64> = consistent
            .iter()
            .map(|inst| *counts.get(inst).expect("planted set covers consistent set"))
            .collect();
        assert!(per_cell.iter().all(|&c| c == per_cell[0]), "{per_cell:?}");
    }

    #[test]
    fn planting_is_exactly_uniform_small() {
        let rho = GraphFixing { a: vec![0], b: vec![1], h: vec![] };
        assert_uniform_over_consistent(4, 1, &rho, 2);
    }

    #[test]
    fn planting_is_exactly_uniform_with_edge() {
        let rho = GraphFixing { a: vec![0, 1], b: vec![2], h: vec![(0, 1, 0)] };
        assert_uniform_over_consistent(8, 1, &rho, 30);
    }

    #[test]
    fn sampled_planting_matches_uniform_chi2() {
        let rho = GraphFixing { a: vec![0, 1], b: vec![2], h: vec![(0, 1, 0)] };
        let consistent = enumerate_yes_rho(8, 2, &rho);
        assert_eq!(consistent.len(), 270);
        let mut r = rng::seeded(61);
        let trials = 200_000usize;
        let mut counts: HashMap<YesInstance, u64> = HashMap::new();
        for _ in 0..trials {
            *counts.entry(sample_planted(8, 2, &rho, &mut r)).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), consistent.len());
        let observed: Vec<u64> = consistent.iter().map(|inst| counts[inst]).collect();
        let expected = vec![trials as f64 / consistent.len() as f64; consistent.len()];
        let p = chi2_pvalue(&observed, &expected);
        assert!(p > 1e-4, "chi-square p-value {p}");
    }

    #[test]
    fn single_edge_planting_is_regular() {
        let rho0 = GraphFixing { a: vec![0, 1], b: vec![2], h: vec![] };
        let rho1 = GraphFixing { a: vec![0, 1], b: vec![2], h: vec![(0, 1, 0)] };
        let domain = enumerate_yes_rho(8, 1, &rho0);
        assert_eq!(domain.len(), 90);
        let image = enumerate_yes_rho(8, 1, &rho1);
        assert_eq!(image.len(), 30);
        let mut counts: HashMap<YesInstance, u64> = HashMap::new();
        for inst in &domain {
            *counts.entry(plant_edge(inst, (0, 1, 0))).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), image.len());
        for inst in &image {
            assert_eq!(counts[inst], 3, "every image should have equally many preimages");
        }
    }
}
