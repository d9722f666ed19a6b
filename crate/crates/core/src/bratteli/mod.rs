//! Bratteli diagrams as finite truncations with an optional stationary
//! tail: telescoping, exact zig-zag intertwinings, a divisibility
//! obstruction for the one-summand stationary case, and finite-stage
//! queries on the dimension group.

mod diagram;
mod dot;
mod k0;
mod verdict;
mod witness;

use thiserror::Error;

use crate::matcat::MatcatError;

pub use diagram::{telescope, BratteliDiagram};
pub use dot::to_dot;
pub use k0::{k0_equal, k0_image, k0_positive, Decision, K0Element, K0Verdict};
pub use verdict::{
    check_certificate, divisibility_certificate, equivalent, DivisibilityCertificate, Side, Verdict,
};
pub use witness::{
    check_intertwining, find_intertwining, witness_failures, IntertwiningWitness, SearchBounds,
    WitnessFailure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BratteliError {
    #[error(transparent)]
    Matcat(#[from] MatcatError),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("level {level} is beyond the diagram ({available} levels and no stationary tail)")]
    LevelOutOfRange { level: usize, available: usize },
    #[error("invalid index list: {0}")]
    InvalidIndices(String),
    #[error("witness shape mismatch: {0}")]
    WitnessShape(String),
    #[error("vector of length {found} at a level with {expected} summands")]
    VectorLength { expected: usize, found: usize },
}
