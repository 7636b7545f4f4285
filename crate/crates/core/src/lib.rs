//! Algorithms around ordered Ramsey numbers for monotone paths, blowups in
//! dense graphs, and their supporting constructions.
//!
//! Vertices and elements are 0-based throughout the Rust API. The JSON file
//! formats use 1-based labels; conversion happens in the serde layer.

pub mod coloring;
pub mod error;
pub mod graph;
pub mod poset;
pub mod ramsey;
mod serde_util;
pub mod sphere;
pub mod vc;

pub use coloring::{
    dependency_digraph, has_admissible_subset, induce, is_acyclic, is_admissible, Color, DependencyDigraph,
    OrderedColoring, SubsetColoring,
};
pub use error::{Error, Result};
pub use graph::{Blowup, DensityEstimate, OrderedGraph};
pub use poset::{MultiOrder, PartitionParams, PartitionResult, Poset};
pub use ramsey::{compute_f, RamseyResult, SearchOptions};
pub use sphere::{ConstructionGraph, ConstructionSpec, SpherePartition};
pub use vc::{PackingResult, SetSystem};
