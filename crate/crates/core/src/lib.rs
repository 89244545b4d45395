//! Small-world network capacity toolkit.
//!
//! Four classical small-world constructions (ring lattice with added
//! shortcuts, Watts–Strogatz rewiring, Kleinberg grid, navigable ring),
//! their expected weighted graphs, exact global minimum cuts, closed-form
//! capacity intervals, and greedy decentralized routing.
//!
//! The crate is `no_std` (with `alloc`); everything here is a pure function
//! of its inputs, so callers are free to fan work out across threads. All
//! randomness flows through the counter-based mixer in [`rng`], which is part
//! of the reproducibility contract: identical parameters and seed produce
//! bit-identical graphs on every platform.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod error;
pub mod expectation;
pub mod generators;
pub mod graph;
pub mod mincut;
mod numeric;
pub mod rng;
pub mod routing;

pub use error::{GraphError, ParamError};
pub use graph::{lattice_distance, ring_distance, CutResult, NodeId, WeightedGraph};
pub use rng::Seed;
