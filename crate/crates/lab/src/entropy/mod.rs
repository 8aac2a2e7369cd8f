//! Distributions over permutation tuples: exact densities, min-entropy
//! defects, dense decompositions, and the reduced-oracle adapter.

pub mod adapter;
pub mod decompose;
pub mod density;
pub mod dist;
pub mod hypercube;

pub use decompose::{decompose, Decomposition};
pub use density::{density_report, DensityReport, Direction};
pub use dist::{Coord, PermDistribution};
