//! From a chirotope on ten points to the k-partite graph whose
//! k-clique-freeness certifies the optimal colored Tverberg property.
//!
//! One part per valid intersection point holds its orientation vertices;
//! a final part holds the 10,045 color partitions. Orientation vertices on
//! different points are joined unless the shared-line certificate rules the
//! pair out; an orientation vertex is joined to a color partition iff none
//! of the Tverberg partitions it determines is rainbow for that coloring.

mod graph;
mod partitions;
mod vertices;

use thiserror::Error;

use crate::chirotope::IntersectionQuad;
use crate::engines::BruteError;

pub use graph::{build_h, color_edge, ip_edge, verify_chirotope, HGraph, HNode, VerifyOutcome, VerifyReport};
pub use partitions::{
    enumerate_color_partitions, is_rainbow, pair_mask, ColorPartition, Profile, TverbergPartition, POINTS,
};
pub use vertices::{
    determined_sign, enumerate_orientation_vertices, enumerate_orientation_vertices_with, triangle_contains_y,
    tverberg_3322_at, tverberg_3331, OrientationVertex, QuadFrame, VertexFilters, VertexView,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TverbergError {
    #[error("triangle {0:?} is not a triangle of points outside {1}")]
    TriangleTouchesQuad([usize; 3], IntersectionQuad),
    #[error("sign of ({i}, {j}, y) at {quad} is not determined by the vertex")]
    UndeterminedSign { quad: IntersectionQuad, i: usize, j: usize },
    #[error("vertex signs do not match the opposite-region pairs of {0}")]
    VertexDomainMismatch(IntersectionQuad),
    #[error("H is defined for ten points, got {0}")]
    WrongSize(usize),
    #[error("the sign map violates the chirotope axioms")]
    NotAChirotope,
    #[error("the chirotope is not acyclic")]
    Cyclic,
    #[error(transparent)]
    Search(#[from] BruteError),
}
