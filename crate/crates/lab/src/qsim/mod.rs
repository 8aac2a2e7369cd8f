//! Exact simulation of small quantum query algorithms.

pub mod circuit;
pub mod distinguish;
pub mod state;
pub mod verifier;

pub use circuit::{QueryAlgorithm, QueryWeightTrace};
pub use state::StateVector;
