use serde::{Deserialize, Serialize};

use super::BratteliError;
use crate::matcat::{AlgebraObject, IntMatrix, MultiplicityMorphism};

/// Levels `0..L` joined by multiplicity matrices, optionally continued
/// past level `L − 1` by a fixed square matrix: level `L − 1 + t` is
/// `A^t · level(L − 1)` and every step from then on is `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct BratteliDiagram {
    levels: Vec<AlgebraObject>,
    steps: Vec<MultiplicityMorphism>,
    stationary: Option<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    levels: Vec<AlgebraObject>,
    steps: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stationary: Option<IntMatrix>,
}

impl TryFrom<RawDiagram> for BratteliDiagram {
    type Error = BratteliError;

    fn try_from(r: RawDiagram) -> Result<Self, BratteliError> {
        Self::new(r.levels, r.steps, r.stationary)
    }
}

impl From<BratteliDiagram> for RawDiagram {
    fn from(d: BratteliDiagram) -> Self {
        RawDiagram {
            levels: d.levels,
            steps: d.steps.into_iter().map(|s| s.matrix().clone()).collect(),
            stationary: d.stationary,
        }
    }
}

impl BratteliDiagram {
    pub fn new(
        levels: Vec<AlgebraObject>,
        steps: Vec<IntMatrix>,
        stationary: Option<IntMatrix>,
    ) -> Result<Self, BratteliError> {
        if levels.is_empty() {
            return Err(BratteliError::InvalidDiagram("no levels".into()));
        }
        if steps.len() + 1 != levels.len() {
            return Err(BratteliError::InvalidDiagram(format!(
                "{} levels need {} steps, got {}",
                levels.len(),
                levels.len() - 1,
                steps.len()
            )));
        }
        let steps = steps
            .into_iter()
            .enumerate()
            .map(|(i, m)| MultiplicityMorphism::new(levels[i].clone(), levels[i + 1].clone(), m))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(a) = &stationary {
            let last = levels.last().expect("nonempty");
            if a.rows() != a.cols() || a.cols() != last.len() {
                return Err(BratteliError::InvalidDiagram(format!(
                    "stationary matrix is {}x{}, last level has {} summands",
                    a.rows(),
                    a.cols(),
                    last.len()
                )));
            }
            if a.has_zero_row() {
                return Err(BratteliError::InvalidDiagram(
                    "stationary matrix has a zero row, so the next level has an empty summand".into(),
                ));
            }
        }
        Ok(BratteliDiagram { levels, steps, stationary })
    }

    /// A single starting level continued by `matrix` forever.
    pub fn stationary(start: AlgebraObject, matrix: IntMatrix) -> Result<Self, BratteliError> {
        Self::new(vec![start], Vec::new(), Some(matrix))
    }

    /// The explicit truncation's levels.
    pub fn levels(&self) -> &[AlgebraObject] {
        &self.levels
    }

    /// The explicit truncation's steps.
    pub fn steps(&self) -> &[MultiplicityMorphism] {
        &self.steps
    }

    pub fn stationary_matrix(&self) -> Option<&IntMatrix> {
        self.stationary.as_ref()
    }

    /// Number of explicit levels.
    pub fn truncation_len(&self) -> usize {
        self.levels.len()
    }

    /// Whether `level(i)` exists, ignoring overflow.
    pub fn has_level(&self, i: usize) -> bool {
        i < self.levels.len() || self.stationary.is_some()
    }

    fn out_of_range(&self, level: usize) -> BratteliError {
        BratteliError::LevelOutOfRange {
            level,
            available: self.levels.len(),
        }
    }

    pub fn level(&self, i: usize) -> Result<AlgebraObject, BratteliError> {
        if let Some(l) = self.levels.get(i) {
            return Ok(l.clone());
        }
        let a = self.stationary.as_ref().ok_or_else(|| self.out_of_range(i))?;
        let mut sizes = self.levels.last().expect("nonempty").sizes().to_vec();
        for _ in self.levels.len() - 1..i {
            sizes = a.mul_vec(&sizes)?;
        }
        Ok(AlgebraObject::new(sizes)?)
    }

    /// The step `level(i) → level(i + 1)`.
    pub fn step(&self, i: usize) -> Result<MultiplicityMorphism, BratteliError> {
        if let Some(s) = self.steps.get(i) {
            return Ok(s.clone());
        }
        let a = self.stationary.as_ref().ok_or_else(|| self.out_of_range(i + 1))?;
        Ok(MultiplicityMorphism::new(self.level(i)?, self.level(i + 1)?, a.clone())?)
    }

    /// The matrix of the step `level(i) → level(i + 1)`, without building
    /// the levels.
    pub(crate) fn step_matrix(&self, i: usize) -> Result<&IntMatrix, BratteliError> {
        match self.steps.get(i) {
            Some(s) => Ok(s.matrix()),
            None => self.stationary.as_ref().ok_or_else(|| self.out_of_range(i + 1)),
        }
    }

    /// `step(from) then .. then step(to − 1)`; the identity when equal.
    pub fn path_product(&self, from: usize, to: usize) -> Result<MultiplicityMorphism, BratteliError> {
        if from > to {
            return Err(BratteliError::InvalidIndices(format!("path from level {from} back to {to}")));
        }
        let mut acc = MultiplicityMorphism::identity(&self.level(from)?);
        for i in from..to {
            acc = acc.then(&self.step(i)?)?;
        }
        Ok(acc)
    }

    /// Errors if some step has an all-zero column, i.e. a summand that
    /// maps nowhere. Checks the explicit steps and the stationary matrix.
    pub fn validate_classical(&self) -> Result<(), BratteliError> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.matrix().transpose().has_zero_row() {
                return Err(BratteliError::InvalidDiagram(format!("step {i} has a zero column")));
            }
        }
        if self.stationary.as_ref().is_some_and(|a| a.transpose().has_zero_row()) {
            return Err(BratteliError::InvalidDiagram("stationary matrix has a zero column".into()));
        }
        Ok(())
    }

    /// The diagram on the selected levels, with path products as steps.
    /// The stationary tail is kept exactly when the last index is the last
    /// explicit level, so the result is again a telescope of the full
    /// infinite diagram.
    pub fn telescope(&self, indices: &[usize]) -> Result<BratteliDiagram, BratteliError> {
        if indices.is_empty() {
            return Err(BratteliError::InvalidIndices("empty".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BratteliError::InvalidIndices(format!("{indices:?} is not strictly increasing")));
        }
        let levels = indices.iter().map(|&i| self.level(i)).collect::<Result<Vec<_>, _>>()?;
        let steps = indices
            .windows(2)
            .map(|w| self.path_product(w[0], w[1]).map(|p| p.matrix().clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let keep = *indices.last().expect("nonempty") == self.levels.len() - 1;
        let stationary = if keep { self.stationary.clone() } else { None };
        BratteliDiagram::new(levels, steps, stationary)
    }

    /// The first `n` levels made explicit, keeping the stationary tail when
    /// `n` reaches past the current truncation.
    pub fn extended(&self, n: usize) -> Result<BratteliDiagram, BratteliError> {
        if n == 0 {
            return Err(BratteliError::InvalidIndices("need at least one level".into()));
        }
        let ix: Vec<usize> = (0..n).collect();
        let mut d = self.telescope(&ix)?;
        if n >= self.levels.len() {
            d.stationary = self.stationary.clone();
        }
        Ok(d)
    }
}

/// Free-function form of [`BratteliDiagram::telescope`].
pub fn telescope(d: &BratteliDiagram, indices: &[usize]) -> Result<BratteliDiagram, BratteliError> {
    d.telescope(indices)
}
