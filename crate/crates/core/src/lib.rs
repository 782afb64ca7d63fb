//! Dirichlet-type L-functions that share one Riemann-type functional
//! equation: evaluation, functional-equation checks, critical-line zero
//! location, argument-principle counting, and tracking of zeros along the
//! convex deformation `φ_τ = (1 - τ) f0 + τ f1`.

pub mod analytic;
pub mod characters;
pub mod cli;
pub mod deformation;
pub mod error;
pub mod funceq;
pub mod zerofind;

pub use error::{Error, Result};
