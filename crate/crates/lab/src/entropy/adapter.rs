//! Answering queries to a partially-fixed permutation tuple from a smaller,
//! fully-free tuple: fixed coordinates come from the table, free ones are
//! routed through per-component bijections into the reduced oracle.

use super::dist::Coord;
use crate::perm::{PermTuple, Permutation};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Query access to a permutation tuple, forward and inverse.
pub trait PermOracle {
    fn sizes(&self) -> Vec<usize>;
    fn forward(&self, component: usize, x: usize) -> usize;
    fn inverse(&self, component: usize, y: usize) -> usize;
}

impl PermOracle for PermTuple {
    fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(|p| p.n()).collect()
    }

    fn forward(&self, component: usize, x: usize) -> usize {
        self.components[component].apply(x)
    }

    fn inverse(&self, component: usize, y: usize) -> usize {
        self.components[component].inverse().apply(y)
    }
}

/// A conditioning set together with the routing bijections. For each
/// component, `free_domain` lists the unfixed coordinates I and
/// `free_image` the unhit values J; `route` is the bijection J -> I used to
/// fold free image points back onto the reduced index set.
#[derive(Clone, Debug)]
pub struct FixedStructure {
    sizes: Vec<usize>,
    forward_fixed: Vec<BTreeMap<usize, usize>>,
    inverse_fixed: Vec<BTreeMap<usize, usize>>,
    free_domain: Vec<Vec<usize>>,
    free_image: Vec<Vec<usize>>,
    route: Vec<BTreeMap<usize, usize>>,
}

impl FixedStructure {
    /// Build from a fixing list, routing free images onto free domain
    /// points in sorted order.
    pub fn new(sizes: &[usize], fixed: &[(Coord, usize)]) -> Result<Self> {
        let k = sizes.len();
        let mut forward_fixed = vec![BTreeMap::new(); k];
        let mut inverse_fixed = vec![BTreeMap::new(); k];
        for &((c, x), v) in fixed {
            if c >= k || x >= sizes[c] || v >= sizes[c] {
                return Err(Error::InvalidFixing(format!("fixing ({c},{x})->{v} out of range")));
            }
            if forward_fixed[c].insert(x, v).is_some() {
                return Err(Error::InvalidFixing(format!("coordinate ({c},{x}) fixed twice")));
            }
            if inverse_fixed[c].insert(v, x).is_some() {
                return Err(Error::InvalidFixing(format!("value ({c},{v}) hit twice")));
            }
        }
        let mut free_domain = Vec::with_capacity(k);
        let mut free_image = Vec::with_capacity(k);
        let mut route = Vec::with_capacity(k);
        for c in 0..k {
            let dom: Vec<usize> =
                (0..sizes[c]).filter(|x| !forward_fixed[c].contains_key(x)).collect();
            let img: Vec<usize> =
                (0..sizes[c]).filter(|y| !inverse_fixed[c].contains_key(y)).collect();
            route.push(img.iter().copied().zip(dom.iter().copied()).collect());
            free_domain.push(dom);
            free_image.push(img);
        }
        Ok(Self {
            sizes: sizes.to_vec(),
            forward_fixed,
            inverse_fixed,
            free_domain,
            free_image,
            route,
        })
    }

    pub fn free_domain(&self, c: usize) -> &[usize] {
        &self.free_domain[c]
    }

    pub fn free_image(&self, c: usize) -> &[usize] {
        &self.free_image[c]
    }

    /// Sizes of the reduced components.
    pub fn reduced_sizes(&self) -> Vec<usize> {
        self.free_domain.iter().map(|d| d.len()).collect()
    }

    /// The reduced tuple corresponding to a full tuple consistent with the
    /// fixings: `P(x) = route(B(x))` on free domain indices.
    pub fn reduce(&self, full: &PermTuple) -> Result<PermTuple> {
        let mut components = Vec::with_capacity(self.sizes.len());
        for (c, perm) in full.components.iter().enumerate() {
            for (&x, &v) in &self.forward_fixed[c] {
                if perm.apply(x) != v {
                    return Err(Error::InvalidFixing("tuple inconsistent with fixings".into()));
                }
            }
            let dom = &self.free_domain[c];
            let map: Vec<usize> = dom
                .iter()
                .map(|&x| {
                    let routed = self.route[c][&perm.apply(x)];
                    dom.iter().position(|&d| d == routed).unwrap()
                })
                .collect();
            components.push(Permutation::from_vec(map)?);
        }
        Ok(PermTuple { components })
    }
}

/// The adapter: answers full-size queries from a reduced tuple. The reduced
/// tuple's components are permutations of the reduced index sets, indexed in
/// the sorted order of each component's free domain.
pub struct AdaptedOracle<'a> {
    pub structure: &'a FixedStructure,
    pub reduced: &'a PermTuple,
}

impl PermOracle for AdaptedOracle<'_> {
    fn sizes(&self) -> Vec<usize> {
        self.structure.sizes.clone()
    }

    fn forward(&self, c: usize, x: usize) -> usize {
        if let Some(&v) = self.structure.forward_fixed[c].get(&x) {
            return v;
        }
        let dom = &self.structure.free_domain[c];
        let idx = dom.iter().position(|&d| d == x).expect("free domain point");
        let reduced_target = dom[self.reduced.components[c].apply(idx)];
        // Unroute: the image value mapping to this reduced domain point.
        *self
            .structure
            .route[c]
            .iter()
            .find(|&(_, &d)| d == reduced_target)
            .map(|(y, _)| y)
            .expect("routable image")
    }

    fn inverse(&self, c: usize, y: usize) -> usize {
        if let Some(&x) = self.structure.inverse_fixed[c].get(&y) {
            return x;
        }
        let routed = self.structure.route[c][&y];
        let dom = &self.structure.free_domain[c];
        let idx = dom.iter().position(|&d| d == routed).unwrap();
        let pre = self.reduced.components[c].inverse().apply(idx);
        dom[pre]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn tuples_consistent(fixed: &[(Coord, usize)], n: usize) -> Vec<PermTuple> {
        Permutation::enumerate(n)
            .into_iter()
            .filter(|p| fixed.iter().all(|&((_, x), v)| p.apply(x) == v))
            .map(|p| PermTuple { components: vec![p] })
            .collect()
    }

    /// A toy classical query algorithm: parity of inversions seen through
    /// forward queries plus one inverse probe.
    fn toy_accepts(oracle: &dyn PermOracle) -> bool {
        let n = oracle.sizes()[0];
        let mut count = 0;
        for x in 0..n {
            if oracle.forward(0, x) < x {
                count += 1;
            }
        }
        count += oracle.inverse(0, 0);
        count % 2 == 0
    }

    #[test]
    fn adapter_matches_full_oracle_exhaustively() {
        let fixed = vec![((0, 1), 3usize), ((0, 2), 0usize)];
        let structure = FixedStructure::new(&[4], &fixed).unwrap();
        let fulls = tuples_consistent(&fixed, 4);
        assert_eq!(fulls.len(), 2);
        for full in &fulls {
            let reduced = structure.reduce(full).unwrap();
            let adapted = AdaptedOracle { structure: &structure, reduced: &reduced };
            for x in 0..4 {
                assert_eq!(adapted.forward(0, x), full.forward(0, x));
            }
            for y in 0..4 {
                assert_eq!(adapted.inverse(0, y), full.inverse(0, y));
            }
            assert_eq!(toy_accepts(&adapted), toy_accepts(full));
        }
    }

    #[test]
    fn reduction_is_a_bijection_onto_small_tuples() {
        let fixed = vec![((0, 0), 2usize)];
        let structure = FixedStructure::new(&[4], &fixed).unwrap();
        let fulls = tuples_consistent(&fixed, 4);
        assert_eq!(fulls.len(), 6);
        let reduced: std::collections::BTreeSet<_> = fulls
            .iter()
            .map(|f| structure.reduce(f).unwrap())
            .collect();
        assert_eq!(reduced.len(), 6);
        assert_eq!(structure.reduced_sizes(), vec![3]);
    }

    #[test]
    fn rejects_conflicting_fixings() {
        assert!(FixedStructure::new(&[4], &[((0, 0), 1), ((0, 0), 2)]).is_err());
        assert!(FixedStructure::new(&[4], &[((0, 0), 1), ((0, 3), 1)]).is_err());
        assert!(FixedStructure::new(&[4], &[((0, 9), 1)]).is_err());
    }
}
