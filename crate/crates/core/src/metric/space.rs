use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{MetricCategory, MetricError};

/// A finite hom-set with its distance matrix computed once.
#[derive(Clone, Debug)]
pub struct MetricHomSpace<M> {
    homs: Vec<M>,
    distances: Vec<Vec<BigRational>>,
}

/// A failed metric axiom, with indices into the space's hom list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MetricAxiomViolation {
    /// `d(u, v) = 0` for `u ≠ v`, or `d(u, u) ≠ 0`, or a negative distance.
    Definiteness { u: usize, v: usize },
    Symmetry { u: usize, v: usize },
    Triangle { u: usize, v: usize, w: usize },
}

/// `d(u then k, v then k) ≠ d(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryViolation {
    pub u: String,
    pub v: String,
    pub inner: String,
    pub before: String,
    pub after: String,
}

impl<M: Clone + Eq> MetricHomSpace<M> {
    pub fn new<C: MetricCategory<Morphism = M>>(cat: &C, homs: Vec<M>) -> Self {
        let distances = homs
            .iter()
            .map(|u| homs.iter().map(|v| cat.distance(u, v)).collect())
            .collect();
        MetricHomSpace { homs, distances }
    }

    pub fn homs(&self) -> &[M] {
        &self.homs
    }

    pub fn len(&self) -> usize {
        self.homs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homs.is_empty()
    }

    pub fn distance(&self, u: usize, v: usize) -> &BigRational {
        &self.distances[u][v]
    }

    /// Definiteness, symmetry and the triangle inequality on every pair and
    /// triple. Completeness holds for any finite metric space.
    pub fn check_metric_axioms(&self) -> Vec<MetricAxiomViolation> {
        let n = self.homs.len();
        let d = &self.distances;
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let zero = d[u][v].is_zero();
                if zero != (self.homs[u] == self.homs[v]) || d[u][v] < BigRational::zero() {
                    out.push(MetricAxiomViolation::Definiteness { u, v });
                }
                if d[u][v] != d[v][u] {
                    out.push(MetricAxiomViolation::Symmetry { u, v });
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if d[u][w] > &d[u][v] + &d[v][w] {
                        out.push(MetricAxiomViolation::Triangle { u, v, w });
                    }
                }
            }
        }
        out
    }
}

/// Checks that post-composition with each inner automorphism of the target
/// preserves distances, on all pairs of the space.
pub fn verify_isometry<C: MetricCategory>(
    cat: &C,
    space: &MetricHomSpace<C::Morphism>,
    inner: &[C::Morphism],
) -> Result<Vec<IsometryViolation>, MetricError> {
    let mut out = Vec::new();
    for k in inner {
        let moved: Vec<C::Morphism> = space
            .homs()
            .iter()
            .map(|u| cat.compose(u, k))
            .collect::<Result<_, _>>()?;
        for u in 0..space.len() {
            for v in u + 1..space.len() {
                let after = cat.distance(&moved[u], &moved[v]);
                if &after != space.distance(u, v) {
                    out.push(IsometryViolation {
                        u: cat.describe(&space.homs()[u]),
                        v: cat.describe(&space.homs()[v]),
                        inner: cat.describe(k),
                        before: space.distance(u, v).to_string(),
                        after: after.to_string(),
                    });
                }
            }
        }
    }
    Ok(out)
}
