use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MetricError;

/// `2^{-n}` as an exact rational.
pub fn dyadic(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << n)
}

/// `d(φ, ψ) = Σ_g 2^{-n(g)} [φ(g) ≠ ψ(g)]`, where `n(g)` is the 1-based
/// position of `g` in a fixed enumeration of the domain.
#[derive(Clone, Debug)]
pub struct WeightedDisagreement<T: Eq + Hash> {
    enumeration: Vec<T>,
    position: HashMap<T, usize>,
}

impl<T: Eq + Hash + Clone + Debug> WeightedDisagreement<T> {
    pub fn new(enumeration: Vec<T>) -> Result<Self, MetricError> {
        let mut position = HashMap::with_capacity(enumeration.len());
        for (i, x) in enumeration.iter().enumerate() {
            if position.insert(x.clone(), i + 1).is_some() {
                return Err(MetricError::DuplicateInEnumeration(format!("{x:?}")));
            }
        }
        Ok(WeightedDisagreement { enumeration, position })
    }

    pub fn enumeration(&self) -> &[T] {
        &self.enumeration
    }

    /// `n(g)`, starting at 1.
    pub fn number(&self, g: &T) -> Result<usize, MetricError> {
        self.position
            .get(g)
            .copied()
            .ok_or_else(|| MetricError::NotEnumerated(format!("{g:?}")))
    }

    /// Distance between two maps on the enumerated domain.
    pub fn distance<V: PartialEq>(&self, phi: impl Fn(&T) -> V, psi: impl Fn(&T) -> V) -> BigRational {
        self.distance_of_values(
            &self.enumeration.iter().map(&phi).collect::<Vec<_>>(),
            &self.enumeration.iter().map(&psi).collect::<Vec<_>>(),
        )
    }

    /// Same, with both maps given as value lists in enumeration order.
    pub fn distance_of_values<V: PartialEq>(&self, phi: &[V], psi: &[V]) -> BigRational {
        assert_eq!(phi.len(), self.enumeration.len());
        assert_eq!(psi.len(), self.enumeration.len());
        disagreement_sum(phi.iter().zip(psi).map(|(x, y)| x != y))
    }
}

/// `Σ_{i ≥ 1} 2^{-i} [differs_i]`, built from the largest index down so the
/// sum is formed over a common denominator.
pub(crate) fn disagreement_sum(differs: impl Iterator<Item = bool>) -> BigRational {
    let flags: Vec<bool> = differs.collect();
    let n = flags.len();
    let mut numerator = BigInt::zero();
    for (i, &d) in flags.iter().enumerate() {
        if d {
            numerator += BigInt::one() << (n - 1 - i);
        }
    }
    BigRational::new(numerator, BigInt::one() << n)
}

/// `Σ_g 2^{-n(g)} |rank φ(g) − rank ψ(g)|`, where ranks are positions in a
/// fixed enumeration of the codomain. A metric, but not invariant under
/// relabelling the codomain; used as a negative control for isometry.
#[derive(Clone, Debug)]
pub struct RankWeightedMetric;

impl RankWeightedMetric {
    pub fn distance(phi_ranks: &[usize], psi_ranks: &[usize]) -> BigRational {
        assert_eq!(phi_ranks.len(), psi_ranks.len());
        let mut sum = BigRational::zero();
        for (i, (&x, &y)) in phi_ranks.iter().zip(psi_ranks).enumerate() {
            let gap = x.abs_diff(y);
            if gap != 0 {
                sum += dyadic(i + 1) * BigRational::from_integer(BigInt::from(gap));
            }
        }
        sum
    }
}
