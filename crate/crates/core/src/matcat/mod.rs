//! Finite direct sums of matrix algebras as size vectors, and morphisms
//! between them as multiplicity matrices.

mod export;
mod homs;
mod matrix;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use export::{export_as_spec, MatcatExport};
pub use homs::{enumerate_homs, hom_exists, HomFilter};
pub use matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatcatError {
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix does not fit: {0}")]
    NotAdmissible(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("integer overflow")]
    Overflow,
}

/// `M_{n_1} ⊕ .. ⊕ M_{n_k}`, recorded as the size vector `(n_1, .., n_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AlgebraObject {
    sizes: Vec<u64>,
}

impl AlgebraObject {
    pub fn new(sizes: Vec<u64>) -> Result<Self, MatcatError> {
        if sizes.is_empty() {
            return Err(MatcatError::InvalidObject("no summands".into()));
        }
        if sizes.contains(&0) {
            return Err(MatcatError::InvalidObject(format!("zero size in {sizes:?}")));
        }
        Ok(AlgebraObject { sizes })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Parses `(1,2)`, `1,2` or `[1, 2]`.
    pub fn parse(text: &str) -> Result<Self, MatcatError> {
        let inner = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let sizes = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| MatcatError::InvalidObject(format!("cannot parse {text:?}")))
            })
            .collect::<Result<_, _>>()?;
        Self::new(sizes)
    }
}

impl TryFrom<Vec<u64>> for AlgebraObject {
    type Error = MatcatError;

    fn try_from(sizes: Vec<u64>) -> Result<Self, MatcatError> {
        Self::new(sizes)
    }
}

impl From<AlgebraObject> for Vec<u64> {
    fn from(a: AlgebraObject) -> Self {
        a.sizes
    }
}

impl fmt::Display for AlgebraObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// A multiplicity matrix `source → target`: entry `(j, i)` is how many
/// times summand `i` of the source sits in summand `j` of the target, so
/// `matrix · source ≤ target` componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMorphism", into = "RawMorphism")]
pub struct MultiplicityMorphism {
    source: AlgebraObject,
    target: AlgebraObject,
    matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawMorphism {
    source: AlgebraObject,
    target: AlgebraObject,
    matrix: IntMatrix,
}

impl TryFrom<RawMorphism> for MultiplicityMorphism {
    type Error = MatcatError;

    fn try_from(r: RawMorphism) -> Result<Self, MatcatError> {
        Self::new(r.source, r.target, r.matrix)
    }
}

impl From<MultiplicityMorphism> for RawMorphism {
    fn from(m: MultiplicityMorphism) -> Self {
        RawMorphism {
            source: m.source,
            target: m.target,
            matrix: m.matrix,
        }
    }
}

impl MultiplicityMorphism {
    pub fn new(source: AlgebraObject, target: AlgebraObject, matrix: IntMatrix) -> Result<Self, MatcatError> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(MatcatError::Shape(format!(
                "{}x{} matrix for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        let image = matrix.mul_vec(source.sizes())?;
        if image.iter().zip(target.sizes()).any(|(x, t)| x > t) {
            return Err(MatcatError::NotAdmissible(format!(
                "{matrix} sends {source} to {image:?}, exceeding {target}"
            )));
        }
        Ok(MultiplicityMorphism { source, target, matrix })
    }

    pub fn identity(a: &AlgebraObject) -> Self {
        MultiplicityMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: IntMatrix::identity(a.len()),
        }
    }

    pub fn zero(a: &AlgebraObject, b: &AlgebraObject) -> Self {
        MultiplicityMorphism {
            source: a.clone(),
            target: b.clone(),
            matrix: IntMatrix::zeros(b.len(), a.len()),
        }
    }

    pub fn source(&self) -> &AlgebraObject {
        &self.source
    }

    pub fn target(&self) -> &AlgebraObject {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `matrix · source == target`.
    pub fn is_unital(&self) -> bool {
        self.matrix
            .mul_vec(self.source.sizes())
            .is_ok_and(|v| v == self.target.sizes())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.entries().iter().all(|&x| x == 0)
    }

    /// `self then next`: the matrix product `next.matrix · self.matrix`.
    pub fn then(&self, next: &MultiplicityMorphism) -> Result<MultiplicityMorphism, MatcatError> {
        if self.target != next.source {
            return Err(MatcatError::NotComposable(format!(
                "target {} vs source {}",
                self.target, next.source
            )));
        }
        Ok(MultiplicityMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix)?,
        })
    }

    /// A permutation matrix carrying the source sizes onto the target sizes.
    pub fn is_isomorphism(&self) -> bool {
        let m = &self.matrix;
        m.rows() == m.cols()
            && (0..m.rows()).all(|j| {
                let row = m.row(j);
                row.iter().filter(|&&x| x == 1).count() == 1 && row.iter().all(|&x| x <= 1)
            })
            && (0..m.cols()).all(|i| (0..m.rows()).filter(|&j| m.get(j, i) == 1).count() == 1)
            && self.is_unital()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<MultiplicityMorphism> {
        self.is_isomorphism().then(|| MultiplicityMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.transpose(),
        })
    }
}

impl fmt::Display for MultiplicityMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}{}", self.source, self.target, self.matrix)
    }
}

/// `f then g`.
pub fn compose(f: &MultiplicityMorphism, g: &MultiplicityMorphism) -> Result<MultiplicityMorphism, MatcatError> {
    f.then(g)
}

pub fn identity(a: &AlgebraObject) -> MultiplicityMorphism {
    MultiplicityMorphism::identity(a)
}
