use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("facet family is empty; the smallest complex is {{∅}}")]
    EmptyFamily,
    #[error("facet {facet} is not contained in the ground set {ground}")]
    FacetOutsideGround { facet: VertexSet, ground: VertexSet },
    #[error("ground set size {0} is out of range")]
    BadGroundSize(usize),
    #[error("ground set must be {{1..m}} for this operation, got {0}")]
    NonStandardGround(VertexSet),
    #[error("{face} is not a face, so it has no link")]
    LinkOfNonFace { face: VertexSet },
    #[error("ground sets {0} and {1} overlap")]
    OverlappingGroundSets(VertexSet, VertexSet),
    #[error("label {0} is already in the ground set")]
    LabelNotFresh(usize),
    #[error("the full simplex has no minimal non-faces, so no Alexander dual")]
    DualOfFullSimplex,
    #[error("the complex has no geometric vertices")]
    NoVertices,
    #[error("fixture parameter m = {0} is out of range")]
    BadM(usize),
    #[error("vertex {0} has no assigned vector")]
    MissingVertexAssignment(usize),
    #[error("characteristic map vector for vertex {vertex} has length {got}, expected {expected}")]
    BadVectorLength {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("modulus {0} is neither 0 nor a prime")]
    BadModulus(u64),
    #[error("complex is too large for the exhaustive oracle: {0}")]
    TooLargeForOracle(String),
    #[error("stacked realization failed its check: {0}")]
    RealizationCheck(String),
    #[error("Bier sphere is not chordal")]
    NotChordalBier,
    #[error("schedule step {step}: {facet} is not a current facet")]
    BadSchedule { step: usize, facet: VertexSet },
    #[error("enumeration supports 2 <= m <= 6, got {0}")]
    MTooLarge(usize),
    #[error("input: {0}")]
    Input(String),
    #[error("{0} is beyond the supported range for this operation")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
