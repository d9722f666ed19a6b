//! Finite categories with designated inner automorphisms, and their
//! quotients modulo those automorphisms.

mod axiom;
mod classes;
mod instances;
mod spec;
mod thin;

use thiserror::Error;

pub use axiom::{inner_closure, is_inner_closed, verify_inner_axiom, AxiomViolation};
pub use classes::{
    class_product_defect, codomain_orbit, is_super_strong, quotient, two_sided_orbit, ClassId,
    ClassProductDefect, MorphismClass, QuotientCategory, SuperStrongViolation,
};
pub use instances::{
    finite_sets_all_maps_instance, finite_sets_injections_instance, group_endomorphism_category,
    group_hom_category, group_hom_name,
};
pub use spec::{FiniteCategorySpec, MorId, ObjId, SpecBuilder, SpecJson};
pub use thin::{
    cantor_bernstein_check, cantor_bernstein_violations, CantorBernsteinViolation, ThinPreorder,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("duplicate identifier {0}")]
    DuplicateName(String),
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("composition table has no entry for {0}")]
    MissingComposite(String),
    #[error("composition table has an entry for non-composable {0}")]
    ExtraComposite(String),
    #[error("object {0} has no identity")]
    MissingIdentity(String),
    #[error("identity law fails for {0}")]
    IdentityLaw(String),
    #[error("composition is not associative: {0}")]
    NotAssociative(String),
    #[error("inner element {morphism} of {object} is not invertible")]
    NonInvertibleInner { object: String, morphism: String },
    #[error("inner family of {0} is not a subgroup; take its closure first")]
    InnerNotClosed(String),
    #[error("exchange axiom fails in {} cases", .0.len())]
    AxiomViolations(Vec<AxiomViolation>),
    #[error("product of classes is not a single class: {0}")]
    ClassProductNotAClass(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("quotient is not thin: {classes} classes from {from} to {to}")]
    NotThin { from: String, to: String, classes: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}
