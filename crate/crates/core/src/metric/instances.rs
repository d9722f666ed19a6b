use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::disagreement::disagreement_sum;
use super::{MetricCategory, MetricError, RankWeightedMetric};
use crate::permgrp::{FiniteGroup, GroupHom, GroupKind, HomRecord};
use crate::quotient::{FiniteCategorySpec, MorId, ObjId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GroupMetric {
    Disagreement,
    Rank,
}

/// Enumerated groups and all homomorphisms between them; inner
/// automorphisms are conjugations, listed in the target's element order.
/// Distances use the weighted disagreement metric with the source's
/// enumeration order as numbering.
#[derive(Clone, Debug)]
pub struct GroupHomCategory {
    groups: Vec<Arc<FiniteGroup>>,
    metric: GroupMetric,
}

impl GroupHomCategory {
    pub fn new(groups: Vec<Arc<FiniteGroup>>) -> Self {
        GroupHomCategory {
            groups,
            metric: GroupMetric::Disagreement,
        }
    }

    /// The same category with distances weighted by how far apart the
    /// images sit in the target's enumeration. Not conjugation invariant.
    pub fn with_rank_metric(groups: Vec<Arc<FiniteGroup>>) -> Self {
        GroupHomCategory {
            groups,
            metric: GroupMetric::Rank,
        }
    }

    pub fn group(&self, kind: &GroupKind) -> Result<&Arc<FiniteGroup>, MetricError> {
        self.groups
            .iter()
            .find(|g| g.kind() == kind)
            .ok_or_else(|| MetricError::UnknownObject(kind.to_string()))
    }
}

impl MetricCategory for GroupHomCategory {
    type Object = GroupKind;
    type Morphism = GroupHom;

    fn source(&self, f: &GroupHom) -> GroupKind {
        f.source().kind().clone()
    }

    fn target(&self, f: &GroupHom) -> GroupKind {
        f.target().kind().clone()
    }

    fn compose(&self, f: &GroupHom, g: &GroupHom) -> Result<GroupHom, MetricError> {
        f.then(g).map_err(|e| MetricError::NotComposable(e.to_string()))
    }

    fn identity(&self, a: &GroupKind) -> Result<GroupHom, MetricError> {
        Ok(GroupHom::identity(self.group(a)?))
    }

    fn inner(&self, a: &GroupKind) -> Result<Vec<GroupHom>, MetricError> {
        let g = self.group(a)?;
        Ok(g.elements()
            .iter()
            .map(|h| GroupHom::inner(g, h).expect("element of the group"))
            .collect())
    }

    fn distance(&self, f: &GroupHom, g: &GroupHom) -> BigRational {
        match self.metric {
            GroupMetric::Disagreement => disagreement_sum(
                f.image_indices().iter().zip(g.image_indices()).map(|(x, y)| x != y),
            ),
            GroupMetric::Rank => {
                let r = |h: &GroupHom| h.image_indices().iter().map(|&x| x as usize).collect::<Vec<_>>();
                RankWeightedMetric::distance(&r(f), &r(g))
            }
        }
    }

    fn describe(&self, f: &GroupHom) -> String {
        let rec = HomRecord::from(f);
        let imgs: Vec<String> = rec.images.iter().map(ToString::to_string).collect();
        format!("{}->{}[{}]", rec.source, rec.target, imgs.join(";"))
    }
}

/// A finite category spec with the discrete metric on every hom-set.
#[derive(Clone, Copy, Debug)]
pub struct DiscreteSpecCategory<'a> {
    pub spec: &'a FiniteCategorySpec,
}

impl MetricCategory for DiscreteSpecCategory<'_> {
    type Object = ObjId;
    type Morphism = MorId;

    fn source(&self, f: &MorId) -> ObjId {
        self.spec.source(*f)
    }

    fn target(&self, f: &MorId) -> ObjId {
        self.spec.target(*f)
    }

    fn compose(&self, f: &MorId, g: &MorId) -> Result<MorId, MetricError> {
        self.spec.compose(*f, *g).ok_or_else(|| {
            MetricError::NotComposable(format!(
                "{} then {}",
                self.spec.morphism_name(*f),
                self.spec.morphism_name(*g)
            ))
        })
    }

    fn identity(&self, a: &ObjId) -> Result<MorId, MetricError> {
        Ok(self.spec.identity(*a))
    }

    fn inner(&self, a: &ObjId) -> Result<Vec<MorId>, MetricError> {
        Ok(self.spec.inner(*a).to_vec())
    }

    fn distance(&self, f: &MorId, g: &MorId) -> BigRational {
        if f == g {
            BigRational::zero()
        } else {
            BigRational::from_integer(BigInt::one())
        }
    }

    fn describe(&self, f: &MorId) -> String {
        self.spec.morphism_name(*f).to_string()
    }
}
