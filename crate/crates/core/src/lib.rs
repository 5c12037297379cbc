//! Monotone conservative dual paths in pure simplicial complexes.

pub mod bounds;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod generators;
pub mod ordering;
pub mod pathfinder;

pub use complex::{Complex, ExtNat, Face, VertexId};
pub use error::{Error, Result};
pub use ordering::{DistanceVector, Evaluator, OrderedFacet};
