//! Distributions over permutation tuples with exact rational weights.

use crate::perm::{PermTuple, Permutation};
use crate::rng::LabRng;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A coordinate of a tuple: (component index, domain point).
pub type Coord = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct PermDistribution {
    sizes: Vec<usize>,
    support: Vec<PermTuple>,
    weights: Vec<BigRational>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PermDistribution {
    pub fn new(support: Vec<PermTuple>, weights: Vec<BigRational>) -> Result<Self> {
        if support.is_empty() || support.len() != weights.len() {
            return Err(Error::InvalidDistribution("support/weight length mismatch".into()));
        }
        let sizes = support[0].sizes();
        for t in &support {
            if t.sizes() != sizes {
                return Err(Error::InvalidDistribution("mixed component sizes".into()));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for t in &support {
            if !seen.insert(t.clone()) {
                return Err(Error::InvalidDistribution("duplicate support element".into()));
            }
        }
        let total: BigRational = weights.iter().sum();
        if weights.iter().any(|w| w.is_negative() || w.is_zero()) || !total.is_one() {
            return Err(Error::InvalidDistribution("weights must be positive and sum to 1".into()));
        }
        Ok(Self { sizes, support, weights })
    }

    pub fn uniform_over(support: Vec<PermTuple>) -> Result<Self> {
        let k = support.len();
        let w = vec![ratio(1, k as i64); k];
        Self::new(support, w)
    }

    /// Uniform over all tuples with the given component sizes. Exponential;
    /// meant for tiny sizes only.
    pub fn uniform(sizes: &[usize]) -> Result<Self> {
        let mut tuples: Vec<Vec<Permutation>> = vec![Vec::new()];
        for &n in sizes {
            let perms = Permutation::enumerate(n);
            let mut next = Vec::with_capacity(tuples.len() * perms.len());
            for t in &tuples {
                for p in &perms {
                    let mut t2 = t.clone();
                    t2.push(p.clone());
                    next.push(t2);
                }
            }
            tuples = next;
        }
        Self::uniform_over(tuples.into_iter().map(|components| PermTuple { components }).collect())
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn support(&self) -> &[PermTuple] {
        &self.support
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    /// Probability of the event that every listed coordinate maps to its
    /// listed value.
    pub fn event_prob(&self, fixings: &[(Coord, usize)]) -> BigRational {
        self.support
            .iter()
            .zip(&self.weights)
            .filter(|(t, _)| satisfies(t, fixings))
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// Condition on an event; returns its mass and the renormalized
    /// distribution (None when the mass is zero).
    pub fn condition(&self, fixings: &[(Coord, usize)]) -> (BigRational, Option<Self>) {
        let mass = self.event_prob(fixings);
        if mass.is_zero() {
            return (mass, None);
        }
        let mut support = Vec::new();
        let mut weights = Vec::new();
        for (t, w) in self.support.iter().zip(&self.weights) {
            if satisfies(t, fixings) {
                support.push(t.clone());
                weights.push(w / &mass);
            }
        }
        (mass.clone(), Some(Self { sizes: self.sizes.clone(), support, weights }))
    }

    /// Complement: remove the event, keep sub-probability weights scaled by
    /// the prior remaining mass `scale`.
    pub fn without(&self, fixings: &[(Coord, usize)]) -> Option<Self> {
        let mut support = Vec::new();
        let mut weights = Vec::new();
        let keep_mass: BigRational = self
            .support
            .iter()
            .zip(&self.weights)
            .filter(|(t, _)| !satisfies(t, fixings))
            .map(|(_, w)| w.clone())
            .sum();
        if keep_mass.is_zero() {
            return None;
        }
        for (t, w) in self.support.iter().zip(&self.weights) {
            if !satisfies(t, fixings) {
                support.push(t.clone());
                weights.push(w / &keep_mass);
            }
        }
        Some(Self { sizes: self.sizes.clone(), support, weights })
    }

    /// Largest probability of any value assignment on a coordinate set.
    pub fn max_marginal_prob(&self, coords: &[Coord]) -> (BigRational, Vec<usize>) {
        let mut acc: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for (t, w) in self.support.iter().zip(&self.weights) {
            let key: Vec<usize> = coords.iter().map(|&(c, x)| t.components[c].apply(x)).collect();
            *acc.entry(key).or_insert_with(BigRational::zero) += w.clone();
        }
        acc.into_iter()
            .max_by(|a, b| a.1.cmp(&b.1))
            .map(|(k, v)| (v, k))
            .unwrap()
    }

    /// Pointwise inverse of every tuple in the support.
    pub fn invert(&self) -> Self {
        Self {
            sizes: self.sizes.clone(),
            support: self.support.iter().map(|t| t.invert()).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Exact total-variation distance.
    pub fn tv(&self, other: &Self) -> BigRational {
        let mut map: BTreeMap<&PermTuple, BigRational> = BTreeMap::new();
        for (t, w) in self.support.iter().zip(&self.weights) {
            map.insert(t, w.clone());
        }
        let mut acc = BigRational::zero();
        for (t, w) in other.support.iter().zip(&other.weights) {
            let mine = map.remove(t).unwrap_or_else(BigRational::zero);
            acc += (mine - w.clone()).abs();
        }
        for (_, w) in map {
            acc += w;
        }
        acc / ratio(2, 1)
    }

    /// Mix weighted distributions back together (weights must sum to 1).
    pub fn mixture(parts: &[(BigRational, &Self)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidDistribution("empty mixture".into()));
        }
        let sizes = parts[0].1.sizes.clone();
        let mut acc: BTreeMap<PermTuple, BigRational> = BTreeMap::new();
        for (scale, dist) in parts {
            if dist.sizes != sizes {
                return Err(Error::InvalidDistribution("mixture with mixed sizes".into()));
            }
            for (t, w) in dist.support.iter().zip(&dist.weights) {
                *acc.entry(t.clone()).or_insert_with(BigRational::zero) += scale * w;
            }
        }
        let (support, weights): (Vec<_>, Vec<_>) = acc.into_iter().unzip();
        Self::new(support, weights)
    }

    pub fn sample(&self, rng: &mut LabRng) -> PermTuple {
        let mut u = rng.gen_range(0.0..1.0);
        for (t, w) in self.support.iter().zip(&self.weights) {
            let wf = rational_to_f64(w);
            if u < wf {
                return t.clone();
            }
            u -= wf;
        }
        self.support.last().unwrap().clone()
    }

    /// Reference chain entropy `h(J | I)` of fresh coordinates `J` given
    /// already-fixed coordinates `I`, in bits: a falling-factorial count per
    /// component under nice (uniform) randomness.
    pub fn chain_entropy(&self, fixed: &[Coord], fresh: &[Coord]) -> f64 {
        chain_entropy(&self.sizes, fixed, fresh)
    }
}

pub fn chain_entropy(sizes: &[usize], fixed: &[Coord], fresh: &[Coord]) -> f64 {
    let mut h = 0.0;
    for (c, &n) in sizes.iter().enumerate() {
        let already = fixed.iter().filter(|&&(cc, _)| cc == c).count();
        let new = fresh.iter().filter(|&&(cc, _)| cc == c).count();
        for j in 0..new {
            h += ((n - already - j) as f64).log2();
        }
    }
    h
}

fn satisfies(t: &PermTuple, fixings: &[(Coord, usize)]) -> bool {
    fixings.iter().all(|&((c, x), v)| t.components[c].apply(x) == v)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // Good enough for the magnitudes used here.
    let nf = numer.to_string().parse::<f64>().unwrap();
    let df = denom.to_string().parse::<f64>().unwrap();
    nf / df
}

/// Serialization schema: alphabet of component sizes, support as nested
/// arrays, weights as exact "num/den" strings.
#[derive(Serialize, Deserialize)]
struct DistSchema {
    alphabet: Vec<usize>,
    support: Vec<PermTuple>,
    weights: Vec<String>,
}

impl Serialize for PermDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistSchema {
            alphabet: self.sizes.clone(),
            support: self.support.clone(),
            weights: self.weights.iter().map(|w| w.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DistSchema::deserialize(d)?;
        let weights = raw
            .weights
            .iter()
            .map(|w| w.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let dist =
            PermDistribution::new(raw.support, weights).map_err(serde::de::Error::custom)?;
        if dist.sizes != raw.alphabet {
            return Err(serde::de::Error::custom("alphabet does not match support"));
        }
        Ok(dist)
    }
}
