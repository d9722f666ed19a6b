use std::ops::Range;

use serde::Serialize;

use super::group::block_parity_even;
use super::{GroupError, GroupHom, GroupKind, Permutation};

/// Which permutations may serve as conjugators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugatorClass {
    /// Anything in the full symmetric group.
    Any,
    /// Even permutations only.
    Even,
    /// Permutations preserving each block (any parity per block).
    BlockPreserving(Vec<Range<usize>>),
    /// Block-preserving and even on every block.
    EvenPerBlock(Vec<Range<usize>>),
}

impl ConjugatorClass {
    /// The inner automorphisms of a group of this kind.
    pub fn inner_for(kind: &GroupKind) -> Self {
        match kind {
            GroupKind::Symmetric { .. } => ConjugatorClass::Any,
            GroupKind::Alternating { .. } => ConjugatorClass::Even,
            GroupKind::AlternatingProduct { .. } => ConjugatorClass::EvenPerBlock(kind.blocks()),
        }
    }

    fn blocks(&self) -> Option<&[Range<usize>]> {
        match self {
            ConjugatorClass::BlockPreserving(b) | ConjugatorClass::EvenPerBlock(b) => Some(b),
            _ => None,
        }
    }

    fn allows_point(&self, x: usize, y: usize) -> bool {
        match self.blocks() {
            Some(blocks) => blocks.iter().any(|b| b.contains(&x) && b.contains(&y)),
            None => true,
        }
    }

    fn accepts(&self, h: &Permutation) -> bool {
        match self {
            ConjugatorClass::Any | ConjugatorClass::BlockPreserving(_) => true,
            ConjugatorClass::Even => h.is_even(),
            ConjugatorClass::EvenPerBlock(blocks) => {
                blocks.iter().all(|b| block_parity_even(h, b))
            }
        }
    }
}

/// Outcome of a conjugator search, with the amount of work done.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugatorSearch {
    pub conjugator: Option<Permutation>,
    /// Complete assignments examined (solutions of the relabeling equations
    /// before the parity filter).
    pub leaves: u64,
    /// Branching decisions tried.
    pub nodes: u64,
}

struct Search<'a> {
    n: usize,
    from: &'a [Permutation],
    to: &'a [Permutation],
    class: &'a ConjugatorClass,
    h: Vec<Option<usize>>,
    used: Vec<bool>,
    leaves: u64,
    nodes: u64,
}

impl Search<'_> {
    /// Assigns `h(x) = y` and propagates `h(from_s(x)) = to_s(h(x))`.
    /// Returns the trail of newly assigned points, or `None` on conflict
    /// (already undone).
    fn assign(&mut self, x: usize, y: usize) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        let mut queue = vec![(x, y)];
        while let Some((a, b)) = queue.pop() {
            match self.h[a] {
                Some(existing) if existing == b => continue,
                Some(_) => {
                    self.undo(&trail);
                    return None;
                }
                None => {
                    if self.used[b] || !self.class.allows_point(a, b) {
                        self.undo(&trail);
                        return None;
                    }
                    self.h[a] = Some(b);
                    self.used[b] = true;
                    trail.push(a);
                    for (f, t) in self.from.iter().zip(self.to) {
                        queue.push((f.apply(a), t.apply(b)));
                    }
                }
            }
        }
        Some(trail)
    }

    fn undo(&mut self, trail: &[usize]) {
        for &a in trail {
            if let Some(b) = self.h[a].take() {
                self.used[b] = false;
            }
        }
    }

    fn run(&mut self) -> Option<Permutation> {
        let Some(x) = (0..self.n).find(|&x| self.h[x].is_none()) else {
            self.leaves += 1;
            let h = Permutation::from_images(self.h.iter().map(|v| v.expect("complete")).collect())
                .expect("bijection");
            return self.class.accepts(&h).then_some(h);
        };
        for y in 0..self.n {
            if self.used[y] {
                continue;
            }
            self.nodes += 1;
            if let Some(trail) = self.assign(x, y) {
                if let Some(found) = self.run() {
                    return Some(found);
                }
                self.undo(&trail);
            }
        }
        None
    }
}

/// Finds the lexicographically smallest permutation `h` in `class` with
/// `h⁻¹ · from[s] · h = to[s]` for every `s`.
///
/// Values of `h` are chosen point by point; each choice is propagated along
/// the orbits of `from`, so the search only branches once per orbit.
pub fn find_conjugator(
    from: &[Permutation],
    to: &[Permutation],
    class: &ConjugatorClass,
) -> Result<ConjugatorSearch, GroupError> {
    if from.len() != to.len() {
        return Err(GroupError::NotComposable(format!(
            "{} vs {} permutations",
            from.len(),
            to.len()
        )));
    }
    let n = from.first().or(to.first()).map_or(0, Permutation::degree);
    if let Some(bad) = from.iter().chain(to).find(|p| p.degree() != n) {
        return Err(GroupError::DegreeMismatch {
            expected: n,
            found: bad.degree(),
        });
    }
    if from
        .iter()
        .zip(to)
        .any(|(f, t)| f.cycle_type() != t.cycle_type())
    {
        return Ok(ConjugatorSearch {
            conjugator: None,
            leaves: 0,
            nodes: 0,
        });
    }
    let mut search = Search {
        n,
        from,
        to,
        class,
        h: vec![None; n],
        used: vec![false; n],
        leaves: 0,
        nodes: 0,
    };
    let conjugator = search.run();
    Ok(ConjugatorSearch {
        conjugator,
        leaves: search.leaves,
        nodes: search.nodes,
    })
}

fn check_parallel(f: &GroupHom, g: &GroupHom) -> Result<(), GroupError> {
    if f.source().kind() != g.source().kind() || f.target().kind() != g.target().kind() {
        return Err(GroupError::NotComposable(
            "homomorphisms have different source or target".into(),
        ));
    }
    Ok(())
}

/// An inner automorphism `conj_h` of the target with `g = f then conj_h`,
/// where `h` is the first such target element in enumeration order.
pub fn inner_equivalent(f: &GroupHom, g: &GroupHom) -> Result<Option<Permutation>, GroupError> {
    check_parallel(f, g)?;
    let class = ConjugatorClass::inner_for(f.target().kind());
    Ok(find_conjugator(&f.generator_images(), &g.generator_images(), &class)?.conjugator)
}

/// Conjugacy by the full symmetric group on the target's points.
pub fn symmetric_conjugate(f: &GroupHom, g: &GroupHom) -> Result<Option<Permutation>, GroupError> {
    check_parallel(f, g)?;
    Ok(find_conjugator(&f.generator_images(), &g.generator_images(), &ConjugatorClass::Any)?.conjugator)
}

/// Witness for equivalence modulo generalized inner automorphisms:
/// conjugation by a permutation of each target component, of either parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedInnerWitness {
    pub conjugator: Permutation,
    /// Parity of the conjugator on each target block (`true` = even).
    pub block_parities: Vec<bool>,
}

pub fn generalized_inner_equivalent(
    f: &GroupHom,
    g: &GroupHom,
) -> Result<Option<GeneralizedInnerWitness>, GroupError> {
    check_parallel(f, g)?;
    let blocks = f.target().kind().blocks();
    let class = ConjugatorClass::BlockPreserving(blocks.clone());
    let found = find_conjugator(&f.generator_images(), &g.generator_images(), &class)?;
    Ok(found.conjugator.map(|h| GeneralizedInnerWitness {
        block_parities: blocks.iter().map(|b| block_parity_even(&h, b)).collect(),
        conjugator: h,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{
        alternating_group, alternating_product, hom_from_generator_images, standard_embedding,
        symmetric_group,
    };

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    /// Independent route: scan an enumerated group in order.
    fn brute_conjugator(f: &GroupHom, g: &GroupHom, within: &crate::permgrp::FiniteGroup) -> Option<Permutation> {
        let fi = f.generator_images();
        let gi = g.generator_images();
        within
            .elements()
            .iter()
            .find(|h| fi.iter().zip(&gi).all(|(a, b)| &a.conjugate_by(h) == b))
            .cloned()
    }

    #[test]
    fn self_equivalence_gives_identity() {
        let f = standard_embedding(3, 6, 1).unwrap();
        assert!(inner_equivalent(&f, &f).unwrap().unwrap().is_identity());
    }

    #[test]
    fn recovers_conjugator_first_in_order() {
        let a6 = alternating_group(6).unwrap();
        let f = standard_embedding(3, 6, 1).unwrap();
        for h in a6.elements().iter().step_by(37) {
            let g = f.conjugate_by(h).unwrap();
            let found = inner_equivalent(&f, &g).unwrap().unwrap();
            assert_eq!(Some(found.clone()), brute_conjugator(&f, &g, &a6));
            assert_eq!(f.conjugate_by(&found).unwrap(), g);
        }
    }

    #[test]
    fn multiplicities_one_and_two_are_not_conjugate() {
        let f = standard_embedding(3, 7, 1).unwrap();
        let g = standard_embedding(3, 7, 2).unwrap();
        assert_eq!(inner_equivalent(&f, &g).unwrap(), None);
        assert_eq!(symmetric_conjugate(&f, &g).unwrap(), None);
    }

    #[test]
    fn backtracking_agrees_with_brute_force_on_s5() {
        let s5 = symmetric_group(5).unwrap();
        let a4 = alternating_group(4).unwrap();
        let a5 = alternating_group(5).unwrap();
        let f = hom_from_generator_images(&a4, &a5, &[p(5, "(123)"), p(5, "(234)")])
            .unwrap()
            .unwrap();
        for h in s5.elements() {
            let g = f.conjugate_by(h).unwrap();
            let fast = symmetric_conjugate(&f, &g).unwrap();
            assert_eq!(fast, brute_conjugator(&f, &g, &s5));
        }
    }

    #[test]
    fn odd_conjugator_only_in_generalized_sense() {
        // A3 → A3×A3 diagonally; conjugating by a transposition on the first
        // block is odd there, so it is generalized-inner but not inner.
        let a3 = alternating_group(3).unwrap();
        let target = alternating_product(&[3, 3]).unwrap();
        let f = hom_from_generator_images(&a3, &target, &[p(6, "(123)(456)")]).unwrap().unwrap();
        let g = f.conjugate_by(&p(6, "(12)")).unwrap();
        assert_eq!(inner_equivalent(&f, &g).unwrap(), None);
        let w = generalized_inner_equivalent(&f, &g).unwrap().unwrap();
        assert_eq!(f.conjugate_by(&w.conjugator).unwrap(), g);
        assert_eq!(w.block_parities, vec![false, true]);
    }

    #[test]
    fn mismatched_lengths_are_errors() {
        assert!(find_conjugator(&[p(3, "(123)")], &[], &ConjugatorClass::Any).is_err());
    }
}
