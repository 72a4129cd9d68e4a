//! Ore-type degree conditions for uniform hypergraphs.
//!
//! Exact computation of the minimum degree sum over non-edges, matching
//! numbers, intersecting-family structure, extremal constructions, and an
//! executable registry of the associated bounds with exhaustive and
//! randomized checkers.

pub mod constructions;
pub mod error;
pub mod hgf;
pub mod hypergraph;
pub mod matching;
pub mod setcore;
pub mod verify;
pub mod vset;

pub use error::{Error, Result};
pub use hypergraph::{ColoredHypergraph, Hypergraph, OreDegree, OreResult};
pub use setcore::{binom, enumerate_subsets, eval_bound, BoundFormula, ExactInt};
pub use vset::{VertexSet, MAX_VERTICES};
