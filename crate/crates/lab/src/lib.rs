//! Experiment library for permutation-oracle distinguishing problems.
//!
//! The crate is organized around a single family of objects: tuples of
//! permutations presented as query oracles. `oracle` builds graph oracles and
//! their spectral invariants, `qsim` simulates small quantum query algorithms
//! against them, `entropy` handles distributions over permutation tuples and
//! their density decompositions, `reduction` implements the planted
//! re-randomization, and `game` covers the interactive variant.

pub mod entropy;
pub mod game;
pub mod oracle;
pub mod perm;
pub mod qsim;
pub mod reduction;
pub mod rng;
pub mod stats;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation of size {n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },
    #[error("invalid oracle: {0}")]
    InvalidOracle(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid fixing data: {0}")]
    InvalidFixing(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
