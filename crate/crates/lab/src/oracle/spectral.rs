//! Spectral invariants of a graph oracle: normalized Laplacian gap and the
//! lazy-walk contraction rate.

use super::GraphOracle;
use nalgebra::{DMatrix, SymmetricEigen};

/// Multiplicity-aware adjacency matrix of the row-union multigraph.
pub fn adjacency(oracle: &GraphOracle) -> DMatrix<f64> {
    let n = oracle.n();
    let mut a = DMatrix::zeros(n, n);
    for r in 0..oracle.r() {
        for x in 0..n {
            a[(x, oracle.eval(r, x))] += 1.0;
        }
    }
    a
}

/// Normalized Laplacian `I - A / R`. Every vertex has degree exactly R, so
/// this is the usual `I - D^{-1/2} A D^{-1/2}`.
pub fn normalized_laplacian(oracle: &GraphOracle) -> DMatrix<f64> {
    let n = oracle.n();
    DMatrix::identity(n, n) - adjacency(oracle) / oracle.r() as f64
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Spectral gap: the second-smallest Laplacian eigenvalue. Zero exactly when
/// the graph is disconnected.
pub fn spectral_gap(oracle: &GraphOracle) -> f64 {
    sym_eigenvalues(&normalized_laplacian(oracle))[1]
}

/// Transition matrix of the lazy walk: stay put with probability 1/2, else
/// follow a uniform row.
pub fn lazy_transition(oracle: &GraphOracle) -> DMatrix<f64> {
    let n = oracle.n();
    DMatrix::identity(n, n) * 0.5 + adjacency(oracle) * (0.5 / oracle.r() as f64)
}

/// Second-largest eigenvalue modulus of the lazy transition matrix. Laziness
/// keeps the spectrum in [0, 1], so this is one minus half the Laplacian gap
/// on connected instances.
pub fn slem(oracle: &GraphOracle) -> f64 {
    let vals = sym_eigenvalues(&lazy_transition(oracle));
    let n = vals.len();
    vals[..n - 1]
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()))
}
