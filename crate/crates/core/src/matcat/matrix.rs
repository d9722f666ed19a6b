use std::fmt;

use serde::{Deserialize, Serialize};

use super::MatcatError;

/// A nonnegative integer matrix, row-major, with at least one row and one
/// column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, MatcatError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(MatcatError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, MatcatError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(MatcatError::Shape("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self · other`, with overflow checking.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatcatError> {
        if self.cols != other.rows {
            return Err(MatcatError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let cell = &mut data[r * other.cols + c];
                    *cell = a
                        .checked_mul(other.get(k, c))
                        .and_then(|x| cell.checked_add(x))
                        .ok_or(MatcatError::Overflow)?;
                }
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>, MatcatError> {
        if v.len() != self.cols {
            return Err(MatcatError::Shape(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).try_fold(0u64, |acc, (&a, &x)| {
                    a.checked_mul(x).and_then(|p| acc.checked_add(p)).ok_or(MatcatError::Overflow)
                })
            })
            .collect()
    }

    pub fn has_zero_row(&self) -> bool {
        (0..self.rows).any(|r| self.row(r).iter().all(|&x| x == 0))
    }
}

impl TryFrom<Vec<Vec<u64>>> for IntMatrix {
    type Error = MatcatError;

    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self, MatcatError> {
        Self::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<u64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (i, x) in self.row(r).iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
