//! Lazy random walks on a graph oracle, both sampled and as exact
//! distribution evolution.

use super::GraphOracle;
use crate::rng::LabRng;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// One lazy step from `v`: stay with probability 1/2, otherwise follow a
/// uniformly random row.
pub fn lazy_step(oracle: &GraphOracle, v: usize, rng: &mut LabRng) -> usize {
    if rng.gen_bool(0.5) {
        v
    } else {
        let r = rng.gen_range(0..oracle.r());
        oracle.eval(r, v)
    }
}

/// Sample a lazy walk of `t` steps; returns the full path including the
/// starting vertex (length `t + 1`).
pub fn sample_walk(oracle: &GraphOracle, start: usize, t: usize, rng: &mut LabRng) -> Vec<usize> {
    let mut path = Vec::with_capacity(t + 1);
    let mut v = start;
    path.push(v);
    for _ in 0..t {
        v = lazy_step(oracle, v, rng);
        path.push(v);
    }
    path
}

/// Vertices visited at steps `spacing, 2*spacing, ..., count*spacing` of a
/// single lazy walk.
pub fn walk_endpoints(
    oracle: &GraphOracle,
    start: usize,
    spacing: usize,
    count: usize,
    rng: &mut LabRng,
) -> Vec<usize> {
    let mut v = start;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        for _ in 0..spacing {
            v = lazy_step(oracle, v, rng);
        }
        out.push(v);
    }
    out
}

/// Exact distribution of the lazy walk after `t` steps from `start`.
pub fn exact_distribution(oracle: &GraphOracle, start: usize, t: usize) -> Vec<f64> {
    let m = super::spectral::lazy_transition(oracle);
    let mut dist = DVector::zeros(oracle.n());
    dist[start] = 1.0;
    // Rows and columns agree because the matrix is symmetric.
    for _ in 0..t {
        dist = &m * dist;
    }
    dist.iter().copied().collect()
}

/// Exact distribution after `t` steps from an arbitrary start distribution.
pub fn evolve(m: &DMatrix<f64>, start: &[f64], t: usize) -> Vec<f64> {
    let mut dist = DVector::from_column_slice(start);
    for _ in 0..t {
        dist = m * dist.clone();
    }
    dist.iter().copied().collect()
}

/// Exact TV distance to the uniform distribution after `t` steps.
pub fn tv_to_uniform(oracle: &GraphOracle, start: usize, t: usize) -> f64 {
    let dist = exact_distribution(oracle, start, t);
    let u = 1.0 / oracle.n() as f64;
    0.5 * dist.iter().map(|p| (p - u).abs()).sum::<f64>()
}

/// The mixing bound `N * slem^t` the TV distance is certified against.
pub fn mixing_bound(oracle: &GraphOracle, t: usize) -> f64 {
    oracle.n() as f64 * super::spectral::slem(oracle).powi(t as i32)
}
