//! Exact-arithmetic engine for discrete preference games on networks.
//!
//! Player `i` on graph `G` picks a strategy `z_i` from a finite metric space
//! and pays `α·d(s_i, z_i) + (1-α)·Σ_{j∈N(i)} d(z_i, z_j)`, where `s_i` is its
//! preferred strategy. The crate evaluates costs and potentials, runs
//! best-response dynamics, finds social optima and equilibria by exhaustive
//! search, and generates the standard lower-bound and tightness families.
//! Every quantity is an exact rational.

// symmetric matrices read better with explicit (i, j) loops
#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod costs;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod graph;
pub mod instance;
pub mod metric;
pub mod optimize;
pub mod random;
pub mod rational;
pub mod treemed;

pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{AnchoredInstance, Instance, StrategyVector};
pub use metric::Metric;
pub use rational::Rational;
