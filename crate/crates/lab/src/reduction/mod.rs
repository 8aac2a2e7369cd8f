//! Planting fixed structure into fresh instances: graph fixing data, the
//! change-list oracle, the reconnect surgery, and the walk-based planting
//! algorithm.

pub mod algorithm_m;
pub mod metagraph;

use crate::oracle::{GraphOracle, YesInstance};
use crate::perm::Permutation;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Graph fixing data: two disjoint vertex sets pinned to opposite sides and
/// a list of colored edges `(u, v, r)` that must be present, each edge lying
/// inside A or inside B.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphFixing {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub h: Vec<(usize, usize, usize)>,
}

impl GraphFixing {
    pub fn validate(&self, n: usize, r: usize) -> Result<()> {
        for &v in self.a.iter().chain(&self.b) {
            if v >= n {
                return Err(Error::InvalidFixing(format!("vertex {v} out of range")));
            }
        }
        if self.a.iter().any(|v| self.b.contains(v)) {
            return Err(Error::InvalidFixing("A and B intersect".into()));
        }
        let distinct = |s: &[usize]| {
            let mut t = s.to_vec();
            t.sort_unstable();
            t.dedup();
            t.len() == s.len()
        };
        if !distinct(&self.a) || !distinct(&self.b) {
            return Err(Error::InvalidFixing("repeated vertex in A or B".into()));
        }
        for &(u, v, color) in &self.h {
            if color >= r || u == v {
                return Err(Error::InvalidFixing(format!("bad edge ({u},{v},{color})")));
            }
            let in_a = self.a.contains(&u) && self.a.contains(&v);
            let in_b = self.b.contains(&u) && self.b.contains(&v);
            if !in_a && !in_b {
                return Err(Error::InvalidFixing(format!(
                    "edge ({u},{v}) does not lie inside A or inside B"
                )));
            }
        }
        // No vertex can carry two fixed edges of the same color.
        for color in 0..r {
            let mut seen = Vec::new();
            for &(u, v, c) in &self.h {
                if c == color {
                    if seen.contains(&u) || seen.contains(&v) {
                        return Err(Error::InvalidFixing(format!(
                            "color {color} fixes two edges at one vertex"
                        )));
                    }
                    seen.push(u);
                    seen.push(v);
                }
            }
        }
        Ok(())
    }

    pub fn union_size(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Restriction to the first `i` edges, as in the iterative analysis.
    pub fn prefix(&self, i: usize) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            h: self.h[..i].to_vec(),
        }
    }

    /// Does a yes instance satisfy this fixing data? A must lie in one side,
    /// B in the other, and every fixed edge must be present.
    pub fn satisfied_by(&self, inst: &YesInstance) -> bool {
        let in_s = |v: &usize| inst.partition.contains(v);
        let a_side_s = self.a.iter().all(in_s);
        let a_side_t = !self.a.iter().any(in_s);
        let b_side_s = self.b.iter().all(in_s);
        let b_side_t = !self.b.iter().any(in_s);
        let split_ok =
            (a_side_s && (self.b.is_empty() || b_side_t)) || (a_side_t && (self.b.is_empty() || b_side_s));
        let split_ok = if self.a.is_empty() { b_side_s || b_side_t } else { split_ok };
        split_ok && self.h.iter().all(|&(u, v, r)| inst.oracle.eval(r, u) == v)
    }
}

/// All yes instances at size (n, r) consistent with the fixing data.
pub fn enumerate_yes_rho(n: usize, r: usize, rho: &GraphFixing) -> Vec<YesInstance> {
    crate::oracle::enumerate_yes(n, r)
        .into_iter()
        .filter(|inst| rho.satisfied_by(inst))
        .collect()
}

/// The change-list oracle: answers from the change list when the queried
/// vertex appears there (later entries shadow earlier ones, implementing the
/// iterative surgery), otherwise relabels through pi and queries the base.
#[derive(Clone, Debug)]
pub struct PlantedOracle<'a> {
    base: &'a GraphOracle,
    pi: Permutation,
    pi_inv: Permutation,
    changes: Vec<(usize, usize, usize)>,
    queries: std::cell::Cell<usize>,
}

impl<'a> PlantedOracle<'a> {
    pub fn new(base: &'a GraphOracle, pi: Permutation) -> Self {
        let pi_inv = pi.inverse();
        Self { base, pi, pi_inv, changes: Vec::new(), queries: std::cell::Cell::new(0) }
    }

    pub fn changes(&self) -> &[(usize, usize, usize)] {
        &self.changes
    }

    pub fn base_queries(&self) -> usize {
        self.queries.get()
    }

    pub fn eval(&self, r: usize, u: usize) -> usize {
        for &(cu, cv, cr) in self.changes.iter().rev() {
            if cr == r {
                if cu == u {
                    return cv;
                }
                if cv == u {
                    return cu;
                }
            }
        }
        self.queries.set(self.queries.get() + 1);
        self.pi_inv.apply(self.base.eval(r, self.pi.apply(u)))
    }

    /// Plant the fixed edges of `rho`, appending to the change list: for
    /// each (u, v, r), the current partners x, y of u and v are re-matched
    /// to each other.
    pub fn reconnect(&mut self, rho: &GraphFixing) {
        for &(u, v, r) in &rho.h {
            let x = self.eval(r, u);
            let y = self.eval(r, v);
            self.changes.push((u, v, r));
            self.changes.push((x, y, r));
        }
    }

    /// Materialize the full table.
    pub fn to_oracle(&self) -> Result<GraphOracle> {
        let n = self.base.n();
        let table = (0..self.base.r())
            .map(|r| Permutation::from_vec((0..n).map(|u| self.eval(r, u)).collect()))
            .collect::<Result<Vec<_>>>()?;
        GraphOracle::new(n, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::sample_yes;
    use crate::rng;

    fn rho_one_edge() -> GraphFixing {
        GraphFixing { a: vec![0, 1], b: vec![2], h: vec![(0, 1, 0)] }
    }

    #[test]
    fn fixing_validation() {
        assert!(rho_one_edge().validate(8, 1).is_ok());
        assert!(GraphFixing { a: vec![0], b: vec![0], h: vec![] }.validate(8, 1).is_err());
        // Edge crossing A and B.
        assert!(GraphFixing { a: vec![0], b: vec![1], h: vec![(0, 1, 0)] }
            .validate(8, 1)
            .is_err());
        // Two same-color edges at one vertex.
        assert!(GraphFixing { a: vec![0, 1, 2], b: vec![3], h: vec![(0, 1, 0), (1, 2, 0)] }
            .validate(8, 1)
            .is_err());
        assert!(GraphFixing { a: vec![0, 1, 2], b: vec![3], h: vec![(0, 1, 0), (1, 2, 1)] }
            .validate(8, 2)
            .is_ok());
    }

    #[test]
    fn planted_oracle_is_still_a_matching_oracle() {
        let mut r = rng::seeded(91);
        for _ in 0..50 {
            let inst = sample_yes(8, 2, &mut r);
            let pi = crate::perm::Permutation::uniform(8, &mut r);
            // pi must map A into one component and B into the other for the
            // planted oracle to stay valid; build such a pi directly.
            let rho = GraphFixing { a: vec![0, 1], b: vec![2], h: vec![(0, 1, 0)] };
            let pi = valid_pi(&inst, &rho, pi, &mut r);
            let mut planted = PlantedOracle::new(&inst.oracle, pi);
            planted.reconnect(&rho);
            let oracle = planted.to_oracle().unwrap();
            assert_eq!(oracle.eval(0, 0), 1);
            assert_eq!(oracle.eval(0, 1), 0);
            // Changed entries compared to the relabeled base: at most 8
            // per fixed edge.
            assert!(planted.changes().len() <= 2 * rho.h.len());
        }
    }

    fn valid_pi(
        inst: &crate::oracle::YesInstance,
        rho: &GraphFixing,
        _seed: crate::perm::Permutation,
        rng: &mut crate::rng::LabRng,
    ) -> crate::perm::Permutation {
        let n = inst.oracle.n();
        let s = &inst.partition;
        let sbar: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        let e = crate::perm::uniform_injection(rho.a.len(), s, rng);
        let f = crate::perm::uniform_injection(rho.b.len(), &sbar, rng);
        algorithm_m::conditioned_pi(n, &rho.a, &rho.b, &e, &f, rng)
    }

    #[test]
    fn reconnect_plants_into_yes_instance_with_rho() {
        let mut r = rng::seeded(92);
        let rho = rho_one_edge();
        for _ in 0..50 {
            let inst = sample_yes(8, 1, &mut r);
            let pi = valid_pi(&inst, &rho, crate::perm::Permutation::identity(8), &mut r);
            let mut planted = PlantedOracle::new(&inst.oracle, pi.clone());
            planted.reconnect(&rho);
            let oracle = planted.to_oracle().unwrap();
            assert!(oracle.is_yes());
            // The planted partition is the preimage of the base side that the
            // A-targets were injected into (valid_pi injects them into the
            // partition side).
            let mut side: Vec<usize> =
                (0..8).filter(|&v| inst.partition.contains(&pi.apply(v))).collect();
            if !side.contains(&0) {
                side = (0..8).filter(|v| !side.contains(v)).collect();
            }
            side.sort_unstable();
            let planted_inst = YesInstance { oracle, partition: side };
            assert!(rho.satisfied_by(&planted_inst));
        }
    }

    #[test]
    fn enumerate_yes_rho_counts() {
        // N=8, R=1: partitions with {0,1} on one side and {2} on the other,
        // row containing edge (0,1): 10 partitions, forced matching on the
        // {0,1} side, 3 on the other.
        let rho = rho_one_edge();
        assert_eq!(enumerate_yes_rho(8, 1, &rho).len(), 30);
    }
}
