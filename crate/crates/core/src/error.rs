use thiserror::Error;

/// Errors produced by complex construction, path building and enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,

    #[error("facets have differing sizes ({expected} and {found})")]
    Purity { expected: usize, found: usize },

    #[error("invalid vertex label {0:?}")]
    InvalidLabel(String),

    #[error("invalid facet: {0}")]
    InvalidFacet(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),

    #[error("facets {0} and {1} are not adjacent in the dual graph")]
    NotAdjacent(String, String),

    #[error("ordered facet {0} is not admissible with respect to the target set")]
    NotAdmissible(String),

    #[error("no admissible ordering of {0}")]
    NoAdmissibleOrdering(String),

    #[error("no monotone conservative step from {0}")]
    Stuck(String),

    #[error("node cap of {cap} exceeded")]
    CapExceeded { cap: u64 },

    #[error("vertex labels shared by both operands: {0}")]
    LabelCollision(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,

    #[error("deletion is not pure of the original dimension")]
    ImpureDeletion,

    #[error("target set is empty")]
    EmptyTarget,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
