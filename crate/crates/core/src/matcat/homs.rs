use itertools::Itertools;

use super::{AlgebraObject, IntMatrix, MultiplicityMorphism};

/// Which multiplicity matrices to admit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomFilter {
    /// Require `matrix · source == target`.
    pub unital: bool,
    /// Admit the all-zero matrix.
    pub allow_zero: bool,
}

impl Default for HomFilter {
    fn default() -> Self {
        HomFilter {
            unital: false,
            allow_zero: true,
        }
    }
}

/// Rows `x ≥ 0` with `x · sizes ≤ bound` (or `= bound`), in lexicographic
/// order.
fn rows(sizes: &[u64], bound: u64, exact: bool) -> Vec<Vec<u64>> {
    fn go(sizes: &[u64], i: usize, left: u64, exact: bool, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == sizes.len() {
            if !exact || left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left / sizes[i] {
            cur.push(x);
            go(sizes, i + 1, left - x * sizes[i], exact, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(sizes, 0, bound, exact, &mut Vec::new(), &mut out);
    out
}

/// Whether some nonnegative `x` has `x · sizes = target`.
fn representable(sizes: &[u64], target: u64) -> bool {
    let t = target as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for v in 0..=t {
        if reach[v] {
            for &s in sizes {
                if let Some(w) = v.checked_add(s as usize) {
                    if w <= t {
                        reach[w] = true;
                    }
                }
            }
        }
    }
    reach[t]
}

/// Whether `a → b` has an admissible multiplicity matrix passing `filter`.
///
/// Unital: every target size must be a nonnegative combination of the
/// source sizes. Non-unital: the zero matrix always fits; a nonzero one
/// fits iff some source summand is no larger than some target summand.
pub fn hom_exists(a: &AlgebraObject, b: &AlgebraObject, filter: HomFilter) -> bool {
    if filter.unital {
        b.sizes().iter().all(|&t| representable(a.sizes(), t))
    } else {
        filter.allow_zero || a.sizes().iter().any(|s| b.sizes().iter().any(|t| s <= t))
    }
}

/// All admissible matrices `a → b` passing `filter`, in lexicographic order
/// of their row-major entries.
pub fn enumerate_homs(a: &AlgebraObject, b: &AlgebraObject, filter: HomFilter) -> Vec<MultiplicityMorphism> {
    let per_row: Vec<Vec<Vec<u64>>> = b
        .sizes()
        .iter()
        .map(|&t| rows(a.sizes(), t, filter.unital))
        .collect();
    per_row
        .iter()
        .map(|r| r.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let data: Vec<u64> = choice.into_iter().flatten().copied().collect();
            IntMatrix::new(b.len(), a.len(), data).expect("shape")
        })
        .filter(|m| filter.allow_zero || m.entries().iter().any(|&x| x != 0))
        .map(|m| MultiplicityMorphism::new(a.clone(), b.clone(), m).expect("admissible by construction"))
        .collect()
}
