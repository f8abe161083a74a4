//! Heuristically embedded social overlays on a ring and the NextBestOnce
//! family of routing algorithms.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs and seed; IO, file formats, the CLI and parallel
//! fan-out live in the `nextbest` companion crate.
//!
//! Layout:
//! - [`model`]: parameters, ring metric, label law, γ calibration, edge
//!   generators and the immutable [`OverlayGraph`].
//! - [`routing`]: the NextBestOnce* skeleton with pluggable identifier
//!   sets, plus greedy and distance-directed DFS baselines.
//! - [`analysis`]: experiment harness, lemma-level estimators, bound
//!   calculators and confidence intervals.

#![no_std]
#![warn(clippy::std_instead_of_alloc)]
#![warn(clippy::std_instead_of_core)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
pub mod model;
pub mod rng;
pub mod routing;

pub use self::error::{Error, Result};
pub use self::model::{
    build_graph, calibrate_gamma, ring_distance, EdgeKind, GeneratorKind, GraphParams, NodeId,
    OverlayGraph,
};
pub use self::routing::{route, AlgorithmKind, Outcome, RouteQuery, RouteTrace};
