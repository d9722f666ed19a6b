//! Metrics on hom-sets, the isometry condition for inner automorphisms, and
//! the alternating triangle-correction loop that lifts an isomorphism of
//! classes to an isomorphism.

mod disagreement;
mod instances;
mod intertwine;
mod space;

use std::fmt::Debug;

use num_rational::BigRational;
use thiserror::Error;

pub use disagreement::{dyadic, RankWeightedMetric, WeightedDisagreement};
pub use instances::{DiscreteSpecCategory, GroupHomCategory};
pub use intertwine::{
    approximate_intertwine, CauchyBound, CorrectorOracle, EpsilonSchedule, ExhaustiveCorrector,
    FirstWithinTolerance, IntertwineError, IntertwiningFailure, IntertwiningProblem,
    IntertwiningResult, StepRecord,
};
pub use space::{verify_isometry, IsometryViolation, MetricAxiomViolation, MetricHomSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("enumeration repeats an element: {0}")]
    DuplicateInEnumeration(String),
    #[error("element not in the enumeration: {0}")]
    NotEnumerated(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("unknown object: {0}")]
    UnknownObject(String),
}

/// A category whose hom-sets carry metrics and whose objects carry
/// designated inner automorphisms. Composition is `f then g`.
pub trait MetricCategory {
    type Object: Clone + Eq + Debug;
    type Morphism: Clone + Eq + Debug;

    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism, MetricError>;
    fn identity(&self, a: &Self::Object) -> Result<Self::Morphism, MetricError>;
    /// Inner automorphisms of `a`, in a fixed order.
    fn inner(&self, a: &Self::Object) -> Result<Vec<Self::Morphism>, MetricError>;
    /// Distance between parallel morphisms.
    fn distance(&self, f: &Self::Morphism, g: &Self::Morphism) -> BigRational;
    /// Short human-readable name, for reports.
    fn describe(&self, f: &Self::Morphism) -> String;
}
