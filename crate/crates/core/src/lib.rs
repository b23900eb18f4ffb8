//! Cellular sheaves on weighted graphs whose global sections are
//! source-to-sink paths.
//!
//! The crate provides two sheaves over a finite weighted graph with a
//! distinguished source and sink:
//!
//! * [`path_sheaf::PathSheaf`] marks edges active or inactive; its global
//!   sections are exactly the assignments whose active subgraph contains a
//!   source-to-sink path (possibly together with disjoint active cycles).
//! * [`distance_sheaf::DistancePathSheaf`] additionally carries the exact
//!   distance travelled from the source, which orients sections and rules
//!   out active cycles altogether.
//!
//! Shortest-path search is expressed as the extension of local sections to
//! global ones: [`pathfinding::dijkstra_dp`] runs Dijkstra's algorithm
//! directly over distance-sheaf sections, and [`pathfinding::search_p`] is a
//! cost-guided best-first search over path-sheaf sections that also covers
//! A* through a pluggable [`pathfinding::CostFunction`].
//!
//! All numeric data is exact rational arithmetic ([`rational::Rational`]),
//! so section checking is decidable equality, never a tolerance.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the command
//! line live in the companion `sheafpath-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod distance_sheaf;
pub mod graph;
pub mod morphism;
pub mod oracle;
pub mod path_sheaf;
pub mod pathfinding;
pub mod rational;
pub mod sheaf;
#[cfg(test)]
pub(crate) mod testutil;

pub use distance_sheaf::DistancePathSheaf;
pub use graph::{Edge, EdgeId, EdgeSpec, Graph, GraphError, Path, VertexId};
pub use morphism::SheafMorphism;
pub use path_sheaf::PathSheaf;
pub use pathfinding::{CostFunction, SolveResult};
pub use rational::Rational;
pub use sheaf::{Assignment, Cell, EdgePair, Sheaf, SheafError, StalkValue};
