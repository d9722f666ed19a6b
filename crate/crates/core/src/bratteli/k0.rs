use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{BratteliDiagram, BratteliError};
use crate::matcat::IntMatrix;

/// An element of the limit group, given by a vector at some level. `(i, v)`
/// and `(i + 1, step(i) · v)` name the same element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K0Element {
    pub level: usize,
    pub vector: Vec<i64>,
}

impl K0Element {
    pub fn new(level: usize, vector: Vec<i64>) -> Self {
        K0Element { level, vector }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    True,
    False,
    Unknown,
}

/// A decision and the level at which it was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Verdict {
    pub decision: Decision,
    pub level: Option<usize>,
}

impl K0Verdict {
    fn at(decision: Decision, level: usize) -> Self {
        K0Verdict {
            decision,
            level: Some(level),
        }
    }

    fn unknown() -> Self {
        K0Verdict {
            decision: Decision::Unknown,
            level: None,
        }
    }
}

fn apply(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows())
        .map(|r| m.row(r).iter().zip(v).map(|(&a, x)| BigInt::from(a) * x).sum())
        .collect()
}

fn start(d: &BratteliDiagram, x: &K0Element) -> Result<Vec<BigInt>, BratteliError> {
    let expected = d.level(x.level)?.len();
    if x.vector.len() != expected {
        return Err(BratteliError::VectorLength {
            expected,
            found: x.vector.len(),
        });
    }
    Ok(x.vector.iter().map(|&a| BigInt::from(a)).collect())
}

/// The vector representing `x` at level `to ≥ x.level`.
pub fn k0_image(d: &BratteliDiagram, x: &K0Element, to: usize) -> Result<Vec<BigInt>, BratteliError> {
    if to < x.level {
        return Err(BratteliError::InvalidIndices(format!("level {to} is below {}", x.level)));
    }
    let mut v = start(d, x)?;
    for i in x.level..to {
        v = apply(d.step_matrix(i)?, &v);
    }
    Ok(v)
}

/// Exact integer determinant by fraction-free elimination.
fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| m.row(r).iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    a[n - 1][n - 1].clone() * sign
}

fn has_zero_column(m: &IntMatrix) -> bool {
    m.transpose().has_zero_row()
}

/// Whether `x` and `y` meet at some common level `j ≤ depth`. `False` only
/// when the images differ at a level inside the stationary tail whose
/// matrix is invertible over the rationals, so they differ forever.
pub fn k0_equal(d: &BratteliDiagram, x: &K0Element, y: &K0Element, depth: usize) -> Result<K0Verdict, BratteliError> {
    start(d, y)?;
    let lo = x.level.max(y.level);
    if lo > depth {
        start(d, x)?;
        return Ok(K0Verdict::unknown());
    }
    let (mut u, mut v) = (k0_image(d, x, lo)?, k0_image(d, y, lo)?);
    let injective_tail = d.stationary_matrix().is_some_and(|a| !determinant(a).is_zero());
    for j in lo..=depth {
        if j > lo {
            let Ok(m) = d.step_matrix(j - 1) else { break };
            u = apply(m, &u);
            v = apply(m, &v);
        }
        if u == v {
            return Ok(K0Verdict::at(Decision::True, j));
        }
        if injective_tail && j + 1 >= d.truncation_len() {
            return Ok(K0Verdict::at(Decision::False, j));
        }
    }
    Ok(K0Verdict::unknown())
}

/// Whether `x` has a componentwise nonnegative image at some level
/// `j ≤ depth`. `False` when an image is nonpositive and nonzero and every
/// later step has no zero column: nonnegative matrices without zero
/// columns keep such vectors nonpositive and nonzero.
pub fn k0_positive(d: &BratteliDiagram, x: &K0Element, depth: usize) -> Result<K0Verdict, BratteliError> {
    let mut v = start(d, x)?;
    let tail_ok = d.stationary_matrix().is_some_and(|a| !has_zero_column(a));
    // first explicit step index from which every step lacks zero columns
    let clean_from = d
        .steps()
        .iter()
        .rposition(|s| has_zero_column(s.matrix()))
        .map_or(0, |i| i + 1);
    for j in x.level..=depth {
        if j > x.level {
            let Ok(m) = d.step_matrix(j - 1) else { break };
            v = apply(m, &v);
        }
        if v.iter().all(|a| !a.is_negative()) {
            return Ok(K0Verdict::at(Decision::True, j));
        }
        let nonpositive = v.iter().all(|a| !a.is_positive());
        if nonpositive && tail_ok && j >= clean_from {
            return Ok(K0Verdict::at(Decision::False, j));
        }
    }
    Ok(K0Verdict::unknown())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bratteli::diagram::tests::{car, fibonacci, mat, obj};

    fn el(level: usize, v: &[i64]) -> K0Element {
        K0Element::new(level, v.to_vec())
    }

    fn dec(v: Result<K0Verdict, BratteliError>) -> Decision {
        v.unwrap().decision
    }

    #[test]
    fn equality_examples() {
        let d = car();
        assert_eq!(dec(k0_equal(&d, &el(2, &[5]), &el(2, &[5]), 2)), Decision::True);
        assert_eq!(k0_equal(&d, &el(0, &[1]), &el(1, &[2]), 1).unwrap(), K0Verdict::at(Decision::True, 1));
        assert_eq!(dec(k0_equal(&d, &el(0, &[1]), &el(0, &[-1]), 4)), Decision::False);
        assert_eq!(dec(k0_equal(&d, &el(3, &[1]), &el(0, &[1]), 2)), Decision::Unknown);
    }

    #[test]
    fn singular_tail_leaves_inequality_open() {
        let d = BratteliDiagram::stationary(obj(&[1, 1]), mat(&[[1, 1], [1, 1]])).unwrap();
        // (1,0) and (0,1) meet after one step
        assert_eq!(dec(k0_equal(&d, &el(0, &[1, 0]), &el(0, &[0, 1]), 3)), Decision::True);
        assert_eq!(dec(k0_equal(&d, &el(0, &[1, 0]), &el(0, &[0, 2]), 3)), Decision::Unknown);
    }

    #[test]
    fn no_tail_means_no_false() {
        let d = car().telescope(&[0, 1, 2]).unwrap();
        assert_eq!(dec(k0_equal(&d, &el(0, &[1]), &el(0, &[-1]), 5)), Decision::Unknown);
        assert_eq!(dec(k0_positive(&d, &el(0, &[-1]), 5)), Decision::Unknown);
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(k0_positive(&car(), &el(1, &[3]), 1).unwrap(), K0Verdict::at(Decision::True, 1));
        assert_eq!(k0_positive(&fibonacci(), &el(0, &[1, -1]), 1).unwrap(), K0Verdict::at(Decision::True, 1));
        assert_eq!(dec(k0_positive(&car(), &el(0, &[-1]), 0)), Decision::False);
        assert_eq!(dec(k0_positive(&fibonacci(), &el(0, &[-1, -1]), 5)), Decision::False);
        // (−2, 1) ↦ (−1, −2): decided one level later
        assert_eq!(k0_positive(&fibonacci(), &el(0, &[-2, 1]), 5).unwrap(), K0Verdict::at(Decision::False, 1));
        assert_eq!(dec(k0_positive(&fibonacci(), &el(0, &[-2, 1]), 0)), Decision::Unknown);
    }

    #[test]
    fn vector_length_is_checked() {
        assert!(matches!(
            k0_positive(&fibonacci(), &el(0, &[1]), 2),
            Err(BratteliError::VectorLength { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&mat(&[[1, 1], [1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&mat(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]])), BigInt::from(18));
        assert_eq!(determinant(&mat(&[[1, 2], [2, 4]])), BigInt::zero());
        assert_eq!(determinant(&mat(&[[0, 1], [1, 0]])), BigInt::from(-1));
    }
}
