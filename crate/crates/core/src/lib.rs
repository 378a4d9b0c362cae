//! Geodesic convexity and partial cubes on small finite graphs.
//!
//! Everything metric hangs off [`Metric`], which wraps a connected
//! [`Graph`] with its distance matrix and interval table: pre-hulls and
//! hulls, copoints and attaching points, the pre-hull number, ph-stability,
//! gates, the Θ relation and the three partial-cube recognisers.
//! [`constructions`] builds graphs (families, products, expansions,
//! contractions, gated amalgams).

pub mod bitset;
pub mod constructions;
pub mod convexity;
pub mod error;
pub mod graph;
pub mod iso;
pub mod metric;
pub mod theta;

pub use bitset::VertexSet;
pub use convexity::{
    AttConvexityViolation, ConvexityViolation, Copoint, HullTrace, PhStabilityViolation,
    ORACLE_BOUND,
};
pub use error::{Error, ParseErrorKind, Result};
pub use graph::Graph;
pub use iso::{are_isomorphic_small, find_isomorphism, DEFAULT_ISO_BOUND};
pub use metric::{distances, DistanceMatrix, Metric};
pub use theta::{CubeEmbedding, DirectedEdge, HalfSpaceData, RecognitionFailure, ThetaStructure};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
