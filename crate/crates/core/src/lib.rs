//! Exact symbolic engine for double `P^1`-bundle structures over Fano
//! manifolds of Picard number one.
//!
//! The crate is organised bottom-up: [`algebra`] provides the exact
//! substrate, [`chowring`] the intersection-ring presentations and identity
//! checks, [`tanfield`] the rationality decision for `tan^2(pi/m)`, and
//! [`classifier`] the case enumeration ending in the final invariant tables.

pub mod algebra;
pub mod chowring;
pub mod classifier;
pub mod exec;
pub mod tanfield;

pub use algebra::{AlgebraError, IntPoly, MPoly, Rat, RatFn, Symbol};
pub use exec::Exec;
