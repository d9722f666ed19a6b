//! Finite permutation groups, their homomorphisms, and the alternating-group
//! building blocks.

mod blocks;
mod conjugacy;
mod exceptional;
mod group;
mod hom;
mod perm;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use blocks::{
    block_data_from_images, block_data_of, inner_reducibility_condition, multiplicity_of,
    multiplicity_of_images, orbits, standard_embedding, standard_embedding_between,
    standard_embedding_images, BlockMultiplicityData,
};
pub use conjugacy::{
    find_conjugator, generalized_inner_equivalent, inner_equivalent, symmetric_conjugate,
    ConjugatorClass, ConjugatorSearch, GeneralizedInnerWitness,
};
pub use exceptional::{find_exceptional_a6_automorphism, verify_nonclosure_a3_a6_a7, NonClosureReport};
pub use group::{
    alternating_group, alternating_product, standard_generators, symmetric_group, FiniteGroup,
    GroupCaps, GroupKind,
};
pub use hom::{all_homs, automorphism_with_images, automorphisms, hom_from_generator_images, GroupHom};
pub use perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidKind(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("inconsistent block data: {0}")]
    InconsistentBlockData(String),
}

/// A homomorphism as data: source and target descriptors plus the images
/// of the source's standard generators, in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHomRecord", into = "RawHomRecord")]
pub struct HomRecord {
    pub source: GroupKind,
    pub target: GroupKind,
    pub images: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
struct RawHomRecord {
    source: GroupKind,
    target: GroupKind,
    images: Vec<String>,
}

impl TryFrom<RawHomRecord> for HomRecord {
    type Error = GroupError;

    fn try_from(raw: RawHomRecord) -> Result<Self, GroupError> {
        let n = raw.target.degree();
        let images = raw
            .images
            .iter()
            .map(|s| Permutation::parse_cycles(n, s))
            .collect::<Result<_, _>>()?;
        Ok(HomRecord {
            source: raw.source,
            target: raw.target,
            images,
        })
    }
}

impl From<HomRecord> for RawHomRecord {
    fn from(r: HomRecord) -> Self {
        RawHomRecord {
            source: r.source,
            target: r.target,
            images: r.images.iter().map(ToString::to_string).collect(),
        }
    }
}

impl From<&GroupHom> for HomRecord {
    fn from(f: &GroupHom) -> Self {
        HomRecord {
            source: f.source().kind().clone(),
            target: f.target().kind().clone(),
            images: f.generator_images(),
        }
    }
}

impl HomRecord {
    /// Enumerates both groups and extends the generator images.
    pub fn to_hom(&self, caps: &GroupCaps) -> Result<GroupHom, GroupError> {
        let source = Arc::new(FiniteGroup::new(self.source.clone(), caps)?);
        let target = Arc::new(FiniteGroup::new(self.target.clone(), caps)?);
        hom_from_generator_images(&source, &target, &self.images)?
            .ok_or_else(|| GroupError::NotAHomomorphism("generator images violate a relation".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_record_round_trip() {
        let f = standard_embedding(3, 7, 2).unwrap();
        let rec = HomRecord::from(&f);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"source":{"kind":"alternating","degree":3},"target":{"kind":"alternating","degree":7},"images":["(123)(456)"]}"#
        );
        let back: HomRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_hom(&GroupCaps::default()).unwrap(), f);
    }
}
