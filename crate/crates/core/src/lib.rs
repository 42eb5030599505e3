//! Exact-arithmetic constructions for Landau-Ginzburg models of invertible
//! quasi-homogeneous potentials: the orbifold FJRW A-model ring, the
//! Milnor-ring B-model, and machine verification that the two agree for
//! two-dimensional loop potentials.

pub mod correlators;
pub mod error;
pub mod fjrw;
pub mod frobenius;
pub mod linalg;
pub mod milnor;
pub mod mirror;
pub mod qpoly;
pub mod rational;
pub mod report;
pub mod symmetry;

pub use error::{Error, Result};
pub use rational::Q;
