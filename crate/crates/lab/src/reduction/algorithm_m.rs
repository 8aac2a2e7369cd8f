//! The walk-based planting procedure: use lazy walks on an unknown yes
//! instance to sample targets for the fixed vertices, then relabel and
//! reconnect so that the fixed structure is present.

use super::{GraphFixing, PlantedOracle};
use crate::oracle::{spectral, walk, GraphOracle};
use crate::perm::{uniform_bijection, Permutation};
use crate::rng::LabRng;
use crate::{Error, Result};
use rand::Rng;

/// Number of lazy-walk steps between recorded endpoints: the smallest L with
/// N * (|A| + |B|) * rate^L <= 1/100, where `rate` is the per-step
/// contraction of the walk towards its stationary distribution.
pub fn mixing_rounds(n: usize, union_size: usize, rate: f64) -> usize {
    assert!(rate > 0.0 && rate < 1.0);
    let target = (100.0 * n as f64 * union_size as f64).ln();
    (target / (1.0 / rate).ln()).ceil() as usize
}

/// Uniform permutation of [n] conditioned on mapping a_i -> e_i, b_i -> f_i.
pub fn conditioned_pi(
    n: usize,
    a: &[usize],
    b: &[usize],
    e: &[usize],
    f: &[usize],
    rng: &mut LabRng,
) -> Permutation {
    assert_eq!(a.len(), e.len());
    assert_eq!(b.len(), f.len());
    let mut image = vec![usize::MAX; n];
    for (&x, &y) in a.iter().zip(e).chain(b.iter().zip(f)) {
        image[x] = y;
    }
    let free_dom: Vec<usize> = (0..n).filter(|&x| image[x] == usize::MAX).collect();
    let free_img: Vec<usize> = (0..n).filter(|y| !image.contains(y)).collect();
    for (&x, &y) in uniform_bijection(&free_dom, &free_img, rng).iter() {
        image[x] = y;
    }
    Permutation::from_vec(image).expect("conditioned map is a bijection")
}

/// Per-step contraction of the lazy walk within each component: the largest
/// second-eigenvalue modulus among the restricted transition matrices. The
/// global second eigenvalue is useless here because every extra component
/// contributes another eigenvalue 1.
pub fn component_rate(oracle: &GraphOracle) -> f64 {
    let m = spectral::lazy_transition(oracle);
    let mut rate = 0.0f64;
    for comp in oracle.components() {
        let k = comp.len();
        let sub = nalgebra::DMatrix::from_fn(k, k, |i, j| m[(comp[i], comp[j])]);
        let mut vals: Vec<f64> = sub
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|v| v.abs())
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if k >= 2 {
            rate = rate.max(vals[k - 2]);
        }
    }
    rate
}

#[derive(Clone, Debug)]
pub struct PlantingOutcome {
    pub oracle: GraphOracle,
    pub pi: Permutation,
    pub e: Vec<usize>,
    pub f: Vec<usize>,
    pub rounds: usize,
    pub resamples: usize,
    pub base_queries: usize,
}

const MAX_RESAMPLES: usize = 100;

/// Plant `rho` into the unknown yes instance behind `base`. `rate` is the
/// assumed walk contraction on each side (spectral promise of the instance
/// family). Walk endpoints for the two sides are resampled, at most 100
/// times, until all targets are distinct vertices.
pub fn plant(
    base: &GraphOracle,
    rho: &GraphFixing,
    rate: f64,
    rng: &mut LabRng,
) -> Result<PlantingOutcome> {
    rho.validate(base.n(), base.r())?;
    let n = base.n();
    let rounds = mixing_rounds(n, rho.union_size(), rate);
    let mut resamples = 0usize;
    let (e, f) = loop {
        let va = rng.gen_range(0..n);
        let vb = rng.gen_range(0..n);
        let e = walk::walk_endpoints(base, va, rounds, rho.a.len(), rng);
        let f = walk::walk_endpoints(base, vb, rounds, rho.b.len(), rng);
        let mut all: Vec<usize> = e.iter().chain(&f).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() == rho.union_size() {
            break (e, f);
        }
        resamples += 1;
        if resamples > MAX_RESAMPLES {
            return Err(Error::Sampling(
                "endpoint targets kept colliding".into(),
            ));
        }
    };
    let pi = conditioned_pi(n, &rho.a, &rho.b, &e, &f, rng);
    let mut planted = PlantedOracle::new(base, pi.clone());
    planted.reconnect(rho);
    let oracle = planted.to_oracle()?;
    Ok(PlantingOutcome {
        oracle,
        pi,
        e,
        f,
        rounds,
        resamples,
        base_queries: planted.base_queries(),
    })
}

/// Exact total variation between the endpoint pair produced by two
/// single-target walks (conditioned on the starts landing in different
/// components) and the uniform distribution over ordered pairs of vertices
/// in different components.
pub fn pair_closeness_exact(base: &GraphOracle, rounds: usize) -> f64 {
    let n = base.n();
    let labels = base.component_labels();
    let m = spectral::lazy_transition(base);
    let mut pow = nalgebra::DMatrix::<f64>::identity(n, n);
    for _ in 0..rounds {
        pow = &pow * &m;
    }
    let valid: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| labels[u] != labels[v])
        .collect();
    let w = 1.0 / valid.len() as f64;
    let mut joint = vec![vec![0.0f64; n]; n];
    for &(va, vb) in &valid {
        for e in 0..n {
            for fv in 0..n {
                joint[e][fv] += w * pow[(va, e)] * pow[(vb, fv)];
            }
        }
    }
    let mut tv = 0.0;
    for e in 0..n {
        for fv in 0..n {
            let target = if labels[e] != labels[fv] { w } else { 0.0 };
            tv += (joint[e][fv] - target).abs();
        }
    }
    tv / 2.0
}
