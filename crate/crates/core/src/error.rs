use thiserror::Error;

use crate::model::Violation;
use crate::vertex::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid vertex label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("path {0} is not regular")]
    IrregularPath(String),

    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),

    #[error("vertex map is not defined on {0}")]
    NotTotal(VertexId),

    #[error("vertex map sends {vertex} to {image}, which is not a target vertex")]
    ImageOutsideTarget { vertex: VertexId, image: VertexId },

    #[error("arrow {index} ({arrow}) maps to {image}, which is not an arrow of the target")]
    ArrowNotPreserved {
        index: usize,
        arrow: String,
        image: String,
    },

    #[error("truncation bound {have} too small: dimension {dim} needs paths up to length {needed}")]
    Truncation { dim: usize, needed: usize, have: usize },

    #[error("chain map does not preserve Omega in dimension {dim}")]
    ChainMapLeavesOmega { dim: usize },

    #[error("digraph factor must be connected and have at least one arrow")]
    Disconnected,

    #[error("hypergraph product edge {size} would need 2^{size} candidate subsets (limit 2^{limit})")]
    ProductTooLarge { size: usize, limit: usize },

    #[error("morphism search space has {count} candidate vertex maps, above the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },

    #[error("morphisms do not share source and target")]
    MismatchedMorphisms,

    #[error("density must be at least 1")]
    InvalidDensity,
}

pub type Result<T> = std::result::Result<T, Error>;
