//! Clique search in k-partite graphs and a computer-assisted check of the
//! optimal colored Tverberg property for ten points in the plane.

pub mod bench;
pub mod bitgraph;
pub mod chirotope;
pub mod engines;
pub mod geomoracle;
pub mod randgen;
pub mod tverberg;

pub use bitgraph::{GraphError, KPartiteGraph, VertexSet};
pub use chirotope::{Chirotope, ChirotopeError, IntersectionQuad, Sign};
pub use engines::{has_kclique, Algorithm, Clique, SearchOutcome};
