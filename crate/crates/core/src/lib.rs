//! Convex covers and convex partitions of graphs.
//!
//! Four graph convexities are supported: digital, P3, P3* and monophonic.
//! Besides a generic hull/interval kernel the crate ships the constructive
//! characterizations that make some cover and partition questions tractable
//! (total domination in the complement, matching cuts, clique separators,
//! co-bipartiteness), the hardness gadgets that relate the others to known
//! NP-complete problems, and exhaustive solvers used as ground truth.

pub mod convexity;
pub mod digital;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod mono;
pub mod p3;
pub mod suites;
pub mod vertex_set;

pub use convexity::{ConvexFamily, ConvexityKind, CoverMode, FamilyViolation};
pub use error::{Error, Result};
pub use graph::{Bipartition, Distance, Graph};
pub use vertex_set::VertexSet;
