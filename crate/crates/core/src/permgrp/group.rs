use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::{GroupError, Permutation};

/// What a [`FiniteGroup`] is, as a permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Alternating { degree: usize },
    Symmetric { degree: usize },
    /// `A_{n_1} × .. × A_{n_k}` acting on the disjoint union of its symbol
    /// blocks, which are laid out consecutively.
    AlternatingProduct { degrees: Vec<usize> },
}

impl GroupKind {
    pub fn degree(&self) -> usize {
        match self {
            GroupKind::Alternating { degree } | GroupKind::Symmetric { degree } => *degree,
            GroupKind::AlternatingProduct { degrees } => degrees.iter().sum(),
        }
    }

    /// Symbol blocks: one per simple component (a single block otherwise).
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        match self {
            GroupKind::AlternatingProduct { degrees } => {
                let mut start = 0;
                degrees
                    .iter()
                    .map(|&d| {
                        let r = start..start + d;
                        start += d;
                        r
                    })
                    .collect()
            }
            _ => vec![0..self.degree()],
        }
    }

    /// Membership test for a permutation of the right degree.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree() {
            return false;
        }
        match self {
            GroupKind::Symmetric { .. } => true,
            GroupKind::Alternating { .. } => p.is_even(),
            GroupKind::AlternatingProduct { .. } => self.blocks().iter().all(|block| {
                block.clone().all(|x| block.contains(&p.apply(x)))
                    && block_parity_even(p, block)
            }),
        }
    }
}

/// Whether the restriction of `p` to a block it preserves is even.
pub(crate) fn block_parity_even(p: &Permutation, block: &std::ops::Range<usize>) -> bool {
    let mut seen = vec![false; block.len()];
    let mut transpositions = 0;
    for start in block.clone() {
        if seen[start - block.start] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        while !seen[x - block.start] {
            seen[x - block.start] = true;
            x = p.apply(x);
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Alternating { degree } => write!(f, "A{degree}"),
            GroupKind::Symmetric { degree } => write!(f, "S{degree}"),
            GroupKind::AlternatingProduct { degrees } => {
                let parts: Vec<String> = degrees.iter().map(|d| format!("A{d}")).collect();
                f.write_str(&parts.join("×"))
            }
        }
    }
}

/// Size limits for enumeration-based operations. Nothing is truncated
/// silently: exceeding a cap is a typed error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCaps {
    /// Largest degree of a single alternating or symmetric component.
    pub max_degree: usize,
    /// Largest number of elements an enumerated group may have.
    pub max_order: usize,
    /// Largest group order accepted by the automorphism search.
    pub max_automorphism_order: usize,
}

impl Default for GroupCaps {
    fn default() -> Self {
        GroupCaps {
            max_degree: 8,
            max_order: 40_320,
            max_automorphism_order: 360,
        }
    }
}

/// An explicitly enumerated permutation group.
///
/// Elements are stored in lexicographic order of their image arrays, so the
/// identity is always element 0 and the order is reproducible.
pub struct FiniteGroup {
    kind: GroupKind,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    cayley: OnceLock<Vec<Vec<u32>>>,
    orders: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<usize>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.kind, self.elements.len())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for FiniteGroup {}

/// `A_n` with the default caps.
pub fn alternating_group(n: usize) -> Result<Arc<FiniteGroup>, GroupError> {
    FiniteGroup::new(GroupKind::Alternating { degree: n }, &GroupCaps::default()).map(Arc::new)
}

/// `S_n` with the default caps.
pub fn symmetric_group(n: usize) -> Result<Arc<FiniteGroup>, GroupError> {
    FiniteGroup::new(GroupKind::Symmetric { degree: n }, &GroupCaps::default()).map(Arc::new)
}

/// `A_{n_1} × .. × A_{n_k}` on the disjoint union of blocks, default caps.
pub fn alternating_product(degrees: &[usize]) -> Result<Arc<FiniteGroup>, GroupError> {
    FiniteGroup::new(
        GroupKind::AlternatingProduct {
            degrees: degrees.to_vec(),
        },
        &GroupCaps::default(),
    )
    .map(Arc::new)
}

/// Standard generators: `(123)` with `(1..n)` for odd `n` or `(2..n)` for
/// even `n` generate `A_n`; `(12)` with `(1..n)` generate `S_n`.
pub fn standard_generators(kind: &GroupKind) -> Vec<Permutation> {
    match kind {
        GroupKind::Alternating { degree } => alternating_generators(*degree),
        GroupKind::Symmetric { degree } => {
            let n = *degree;
            match n {
                0 | 1 => vec![],
                2 => vec![transposition(2, 0, 1)],
                _ => vec![transposition(n, 0, 1), long_cycle(n, 0)],
            }
        }
        GroupKind::AlternatingProduct { degrees } => {
            let total: usize = degrees.iter().sum();
            let mut offset = 0;
            let mut gens = Vec::new();
            for &d in degrees {
                gens.extend(
                    alternating_generators(d)
                        .iter()
                        .map(|g| g.shifted(offset, total)),
                );
                offset += d;
            }
            gens
        }
    }
}

fn alternating_generators(n: usize) -> Vec<Permutation> {
    match n {
        0..=2 => vec![],
        3 => vec![long_cycle(3, 0)],
        _ => {
            let three = Permutation::from_cycles(n, &[vec![1, 2, 3]]).expect("valid cycle");
            let long = if n % 2 == 1 { long_cycle(n, 0) } else { long_cycle(n, 1) };
            vec![three, long]
        }
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    Permutation::from_cycles(n, &[vec![a + 1, b + 1]]).expect("valid transposition")
}

/// The cycle `(start+1 .. n)` in 1-based notation.
fn long_cycle(n: usize, start: usize) -> Permutation {
    Permutation::from_cycles(n, &[((start + 1)..=n).collect()]).expect("valid cycle")
}

/// All permutations of `0..n` in lexicographic order.
fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    // next_permutation
    while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl FiniteGroup {
    pub fn new(kind: GroupKind, caps: &GroupCaps) -> Result<Self, GroupError> {
        let component_degrees: Vec<usize> = match &kind {
            GroupKind::Alternating { degree } | GroupKind::Symmetric { degree } => vec![*degree],
            GroupKind::AlternatingProduct { degrees } => degrees.clone(),
        };
        if component_degrees.is_empty() {
            return Err(GroupError::InvalidKind("empty product".into()));
        }
        for &d in &component_degrees {
            if d == 0 {
                return Err(GroupError::InvalidKind("degree must be at least 1".into()));
            }
            if d > caps.max_degree {
                return Err(GroupError::DegreeCap {
                    degree: d,
                    cap: caps.max_degree,
                });
            }
        }
        let order: usize = match &kind {
            GroupKind::Symmetric { degree } => factorial(*degree),
            _ => component_degrees
                .iter()
                .map(|&d| (factorial(d) / 2).max(1))
                .product(),
        };
        if order > caps.max_order {
            return Err(GroupError::OrderCap {
                order,
                cap: caps.max_order,
            });
        }

        let elements: Vec<Permutation> = match &kind {
            GroupKind::Symmetric { degree } => lex_permutations(*degree)
                .into_iter()
                .map(|v| Permutation::from_images(v).expect("permutation"))
                .collect(),
            GroupKind::Alternating { degree } => lex_permutations(*degree)
                .into_iter()
                .map(|v| Permutation::from_images(v).expect("permutation"))
                .filter(Permutation::is_even)
                .collect(),
            GroupKind::AlternatingProduct { degrees } => {
                let total: usize = degrees.iter().sum();
                let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                let mut offset = 0;
                for &d in degrees {
                    let block: Vec<Vec<usize>> = lex_permutations(d)
                        .into_iter()
                        .filter(|v| {
                            Permutation::from_images(v.clone())
                                .expect("permutation")
                                .is_even()
                        })
                        .collect();
                    let mut next = Vec::with_capacity(acc.len() * block.len());
                    for prefix in &acc {
                        for b in &block {
                            let mut v = prefix.clone();
                            v.extend(b.iter().map(|&y| y + offset));
                            next.push(v);
                        }
                    }
                    acc = next;
                    offset += d;
                }
                debug_assert!(acc.iter().all(|v| v.len() == total));
                acc.into_iter()
                    .map(|v| Permutation::from_images(v).expect("permutation"))
                    .collect()
            }
        };
        debug_assert_eq!(elements.len(), order);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(FiniteGroup {
            generators: standard_generators(&kind),
            kind,
            elements,
            index,
            cayley: OnceLock::new(),
            orders: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn degree(&self) -> usize {
        self.kind.degree()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `elements[i] · elements[j]` (diagrammatic).
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    /// `cayley()[i][s]` is the index of `elements[i] · generators[s]`.
    pub fn cayley(&self) -> &[Vec<u32>] {
        self.cayley.get_or_init(|| {
            self.elements
                .iter()
                .map(|x| {
                    self.generators
                        .iter()
                        .map(|s| self.index[&x.then(s)] as u32)
                        .collect()
                })
                .collect()
        })
    }

    /// Element orders, indexed like [`elements`](Self::elements).
    pub fn element_orders(&self) -> &[usize] {
        self.orders
            .get_or_init(|| self.elements.iter().map(Permutation::order).collect())
    }

    /// Conjugacy class sizes within this group, indexed like the elements.
    pub fn class_sizes(&self) -> &[usize] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut sizes = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let id = sizes.len();
                let mut stack = vec![start];
                class_of[start] = id;
                let mut size = 0;
                while let Some(x) = stack.pop() {
                    size += 1;
                    for s in &self.generators {
                        let y = self.index[&self.elements[x].conjugate_by(s)];
                        if class_of[y] == usize::MAX {
                            class_of[y] = id;
                            stack.push(y);
                        }
                    }
                }
                sizes.push(size);
            }
            class_of.into_iter().map(|c| sizes[c]).collect()
        })
    }
}
