//! Greedy decomposition of a permutation-tuple distribution into dense
//! conditioned components plus a small residual.

use super::density::{self, Direction};
use super::dist::{Coord, PermDistribution};
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct DenseComponent {
    /// Mass of this component within the original distribution.
    pub weight: BigRational,
    /// The conditioning set: coordinates pinned to values, in fixing order.
    pub fixed: Vec<(Coord, usize)>,
    /// The conditioned, renormalized distribution.
    pub dist: PermDistribution,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<DenseComponent>,
    /// Whatever is left once the remaining mass drops below epsilon,
    /// renormalized, with its mass.
    pub residual: Option<(BigRational, PermDistribution)>,
    pub delta: f64,
    pub epsilon: f64,
}

impl Decomposition {
    /// Exact TV distance between the original distribution and the mixture
    /// of components plus residual; zero by construction.
    pub fn reassembly_tv(&self, original: &PermDistribution) -> BigRational {
        let mut parts: Vec<(BigRational, &PermDistribution)> = self
            .components
            .iter()
            .map(|c| (c.weight.clone(), &c.dist))
            .collect();
        if let Some((m, d)) = &self.residual {
            parts.push((m.clone(), d));
        }
        PermDistribution::mixture(&parts).unwrap().tv(original)
    }

    pub fn residual_mass(&self) -> BigRational {
        self.residual
            .as_ref()
            .map(|(m, _)| m.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

/// Peel off dense components until the remaining mass is below `epsilon`.
///
/// Each round greedily extends a conditioning set: while the current
/// conditioned distribution has a coordinate set beating the
/// `(1 - delta)`-scaled chain entropy in either direction, the offending
/// set is pinned to its most likely values (inverse-side offenders are
/// translated to forward fixings at the image coordinates). The fully
/// conditioned event becomes a component and the loop recurses on the
/// complement.
pub fn decompose(dist: &PermDistribution, delta: f64, epsilon: f64) -> Decomposition {
    assert!(delta > 0.0 && delta < 1.0);
    assert!(epsilon > 0.0 && epsilon < 1.0);
    let mut components = Vec::new();
    let mut rest: Option<PermDistribution> = Some(dist.clone());
    let mut rest_mass = BigRational::one();
    let eps = BigRational::from_float(epsilon).unwrap();

    while rest_mass >= eps {
        let cur = rest.as_ref().unwrap();
        let mut fixed: Vec<(Coord, usize)> = Vec::new();
        let mut cond = cur.clone();
        loop {
            let violation = density::find_violation(&cond, Direction::Forward, &fixed, delta)
                .or_else(|| density::find_violation(&cond, Direction::Inverse, &fixed, delta));
            let Some(fixings) = violation else { break };
            for fixing in fixings {
                if !fixed.contains(&fixing) {
                    fixed.push(fixing);
                }
            }
            let (_, next) = cur.condition(&fixed);
            cond = next.expect("violating event has positive mass");
        }
        let event_mass = cur.event_prob(&fixed);
        let weight = &rest_mass * &event_mass;
        components.push(DenseComponent {
            weight,
            fixed: fixed.clone(),
            dist: cond,
        });
        if event_mass.is_one() {
            rest = None;
            rest_mass = BigRational::zero();
            break;
        }
        rest_mass *= BigRational::one() - &event_mass;
        rest = cur.without(&fixed);
        if rest.is_none() {
            rest_mass = BigRational::zero();
            break;
        }
    }

    Decomposition {
        residual: rest.map(|d| (rest_mass, d)),
        components,
        delta,
        epsilon,
    }
}

/// Certification data for one component: the re-scanned defects and the
/// conditioning-set entropy.
#[derive(Clone, Debug)]
pub struct ComponentCheck {
    pub forward_delta: f64,
    pub inverse_delta: f64,
    pub fixed_len: usize,
    /// Chain entropy h(I) of the conditioning set under nice randomness.
    pub fixed_entropy: f64,
}

pub fn check_component(comp: &DenseComponent) -> ComponentCheck {
    let fwd = density::density_report(&comp.dist, Direction::Forward, &comp.fixed);
    let inv = density::density_report(&comp.dist, Direction::Inverse, &comp.fixed);
    let coords: Vec<Coord> = comp.fixed.iter().map(|&(c, _)| c).collect();
    ComponentCheck {
        forward_delta: fwd.delta,
        inverse_delta: inv.delta,
        fixed_len: comp.fixed.len(),
        fixed_entropy: super::dist::chain_entropy(comp.dist.sizes(), &[], &coords),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermTuple, Permutation};

    fn over(perms: Vec<Permutation>) -> PermDistribution {
        PermDistribution::uniform_over(
            perms.into_iter().map(|p| PermTuple { components: vec![p] }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn uniform_is_a_single_dense_component() {
        let d = PermDistribution::uniform(&[4]).unwrap();
        let dec = decompose(&d, 0.2, 0.01);
        assert_eq!(dec.components.len(), 1);
        assert!(dec.components[0].fixed.is_empty());
        assert!(dec.residual.is_none());
        assert!(dec.reassembly_tv(&d).is_zero());
    }

    #[test]
    fn fixed_point_distribution_pins_the_coordinate() {
        // Uniform over permutations of S4 with p(0) = 1: the first round
        // must fix coordinate 0 to 1 and the remainder is dense.
        let d = over(
            Permutation::enumerate(4).into_iter().filter(|p| p.apply(0) == 1).collect(),
        );
        let dec = decompose(&d, 0.2, 0.01);
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.components[0].fixed, vec![((0, 0), 1)]);
        let check = check_component(&dec.components[0]);
        assert!(check.forward_delta <= 0.2 + 1e-9);
        assert!(check.inverse_delta <= 0.2 + 1e-9);
    }

    #[test]
    fn mixture_splits_into_components() {
        // 3/4 mass on permutations with p(0) = 1, 1/4 spread uniformly.
        let biased: Vec<PermTuple> = Permutation::enumerate(4)
            .into_iter()
            .map(|p| PermTuple { components: vec![p] })
            .collect();
        let weights: Vec<BigRational> = biased
            .iter()
            .map(|t| {
                if t.components[0].apply(0) == 1 {
                    BigRational::new(3.into(), 24.into())
                } else {
                    BigRational::new(1.into(), 72.into())
                }
            })
            .collect();
        let d = PermDistribution::new(biased, weights).unwrap();
        let dec = decompose(&d, 0.15, 0.05);
        assert!(!dec.components.is_empty());
        assert!(dec.reassembly_tv(&d).is_zero());
        for comp in &dec.components {
            let check = check_component(comp);
            assert!(check.forward_delta <= 0.15 + 1e-9);
            assert!(check.inverse_delta <= 0.15 + 1e-9);
        }
        assert!(dec.residual_mass() < BigRational::from_float(0.05).unwrap());
    }

    #[test]
    fn claim_size_bound_holds() {
        // |I| <= h(I) + 1 for every component of assorted decompositions.
        for seed in 0..5u64 {
            let mut rng = crate::rng::seeded(seed);
            use rand::Rng;
            let support: Vec<PermTuple> = Permutation::enumerate(4)
                .into_iter()
                .filter(|_| rng.gen_bool(0.5))
                .map(|p| PermTuple { components: vec![p] })
                .collect();
            if support.is_empty() {
                continue;
            }
            let d = PermDistribution::uniform_over(support).unwrap();
            let dec = decompose(&d, 0.25, 0.05);
            for comp in &dec.components {
                let check = check_component(comp);
                assert!(
                    (check.fixed_len as f64) <= check.fixed_entropy + 1.0 + 1e-9,
                    "|I| = {} h(I) = {}",
                    check.fixed_len,
                    check.fixed_entropy
                );
            }
        }
    }
}
