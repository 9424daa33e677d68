//! Path homology of directed hypergraphs over exact arithmetic.

pub mod complex;
pub mod error;
pub mod homotopy;
pub mod laws;
pub mod linalg;
pub mod model;
pub mod omega;
pub mod sample;
pub mod theories;
pub mod vertex;

pub use error::{Error, Result};
pub use linalg::{Field, Scalar};
pub use model::{Arrow, DHMorphism, Digraph, DirectedHypergraph, Hypergraph};
pub use theories::{TheoryKind, TheorySpec};
pub use vertex::{VertexId, VertexSet};
