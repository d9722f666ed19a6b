use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    alternating_group, hom_from_generator_images, standard_generators, FiniteGroup, GroupError,
    GroupHom, GroupKind, Permutation,
};

/// Images of the standard generators of `A_m` under the diagonal map into
/// `A_n` with multiplicity `k`: `k` disjoint copies on the first `k·m`
/// symbols, the rest fixed. Needs no enumeration of `A_n`.
pub fn standard_embedding_images(m: usize, n: usize, k: usize) -> Result<Vec<Permutation>, GroupError> {
    if k * m > n {
        return Err(GroupError::InvalidKind(format!(
            "multiplicity {k} of A{m} does not fit in A{n}"
        )));
    }
    let gens = standard_generators(&GroupKind::Alternating { degree: m });
    Ok(gens
        .iter()
        .map(|s| {
            (0..k).fold(Permutation::identity(n), |acc, copy| {
                acc.then(&s.shifted(copy * m, n))
            })
        })
        .collect())
}

/// The diagonal embedding `A_m → A_n` with multiplicity `k`; `k = 0` is
/// the trivial map.
pub fn standard_embedding(m: usize, n: usize, k: usize) -> Result<GroupHom, GroupError> {
    let source = alternating_group(m)?;
    let target = alternating_group(n)?;
    standard_embedding_between(&source, &target, k)
}

pub fn standard_embedding_between(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    k: usize,
) -> Result<GroupHom, GroupError> {
    let (GroupKind::Alternating { degree: m }, GroupKind::Alternating { degree: n }) =
        (source.kind(), target.kind())
    else {
        return Err(GroupError::InvalidKind("standard embeddings go between alternating groups".into()));
    };
    let images = standard_embedding_images(*m, *n, k)?;
    hom_from_generator_images(source, target, &images)?
        .ok_or_else(|| GroupError::NotAHomomorphism("diagonal map".into()))
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, ordered
/// by smallest point.
pub fn orbits(gens: &[Permutation], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Number of `m`-point orbits of the image of `A_m` acting on the target's
/// symbols.
pub fn multiplicity_of(f: &GroupHom) -> Result<usize, GroupError> {
    let GroupKind::Alternating { degree: m } = *f.source().kind() else {
        return Err(GroupError::InvalidKind("source must be an alternating group".into()));
    };
    if m < 3 {
        return Err(GroupError::InvalidKind(format!("multiplicity needs A_m with m >= 3, got A{m}")));
    }
    Ok(multiplicity_of_images(&f.generator_images(), m))
}

pub fn multiplicity_of_images(images: &[Permutation], m: usize) -> usize {
    let n = images.first().map_or(0, Permutation::degree);
    orbits(images, n).iter().filter(|o| o.len() == m).count()
}

/// Partial-map multiplicities of a map between products of alternating
/// groups, and the symbols of each target component left fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMultiplicityData {
    pub source_degrees: Vec<usize>,
    pub target_degrees: Vec<usize>,
    /// `multiplicities[j][i]`: copies of source component `i` in target
    /// component `j`.
    pub multiplicities: Vec<Vec<usize>>,
    /// Symbols of target component `j` fixed by the whole image.
    pub fixed: Vec<usize>,
}

impl BlockMultiplicityData {
    pub fn new(
        source_degrees: Vec<usize>,
        target_degrees: Vec<usize>,
        multiplicities: Vec<Vec<usize>>,
        fixed: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let data = BlockMultiplicityData {
            source_degrees,
            target_degrees,
            multiplicities,
            fixed,
        };
        data.check()?;
        Ok(data)
    }

    fn check(&self) -> Result<(), GroupError> {
        let rows = self.target_degrees.len();
        if self.multiplicities.len() != rows
            || self.fixed.len() != rows
            || self
                .multiplicities
                .iter()
                .any(|r| r.len() != self.source_degrees.len())
        {
            return Err(GroupError::InconsistentBlockData("shape mismatch".into()));
        }
        for (j, row) in self.multiplicities.iter().enumerate() {
            let used: usize = row
                .iter()
                .zip(&self.source_degrees)
                .map(|(k, d)| k * d)
                .sum();
            if used + self.fixed[j] != self.target_degrees[j] {
                return Err(GroupError::InconsistentBlockData(format!(
                    "target component {j}: {used} moved + {} fixed != {}",
                    self.fixed[j], self.target_degrees[j]
                )));
            }
        }
        Ok(())
    }
}

/// Sufficient condition for maps with equal multiplicities to differ by an
/// inner (even-per-component) automorphism: in every target component,
/// either some source component of odd degree occurs at least twice, or at
/// least two symbols are fixed.
pub fn inner_reducibility_condition(data: &BlockMultiplicityData) -> bool {
    data.multiplicities.iter().zip(&data.fixed).all(|(row, &fixed)| {
        fixed >= 2
            || row
                .iter()
                .zip(&data.source_degrees)
                .any(|(&k, &d)| d % 2 == 1 && k >= 2)
    })
}

fn component_degrees(kind: &GroupKind) -> Result<Vec<usize>, GroupError> {
    match kind {
        GroupKind::Alternating { degree } => Ok(vec![*degree]),
        GroupKind::AlternatingProduct { degrees } => Ok(degrees.clone()),
        GroupKind::Symmetric { .. } => Err(GroupError::InvalidKind(
            "block data needs alternating components".into(),
        )),
    }
}

/// Reads off block data from generator images of a map between products of
/// alternating groups. Fails with `InconsistentBlockData` when the image
/// action is not a disjoint union of natural-degree orbits and fixed points
/// (for instance `A5` acting transitively on six points).
pub fn block_data_from_images(
    source: &GroupKind,
    target: &GroupKind,
    generator_images: &[Permutation],
) -> Result<BlockMultiplicityData, GroupError> {
    let source_degrees = component_degrees(source)?;
    let target_degrees = component_degrees(target)?;
    let n = target.degree();
    // which generators belong to which source component
    let mut per_component: Vec<Vec<Permutation>> = vec![Vec::new(); source_degrees.len()];
    let mut gi = 0;
    for (c, &d) in source_degrees.iter().enumerate() {
        let count = standard_generators(&GroupKind::Alternating { degree: d }).len();
        per_component[c] = generator_images[gi..gi + count].to_vec();
        gi += count;
    }
    if gi != generator_images.len() {
        return Err(GroupError::InconsistentBlockData("generator count".into()));
    }
    let blocks = target.blocks();
    let mut multiplicities = vec![vec![0; source_degrees.len()]; blocks.len()];
    let mut fixed = vec![0; blocks.len()];
    for (j, block) in blocks.iter().enumerate() {
        fixed[j] = block
            .clone()
            .filter(|&x| generator_images.iter().all(|g| g.apply(x) == x))
            .count();
        for (i, gens) in per_component.iter().enumerate() {
            let d = source_degrees[i];
            for orbit in orbits(gens, n) {
                if orbit.len() > 1 && block.contains(&orbit[0]) {
                    if orbit.len() != d {
                        return Err(GroupError::InconsistentBlockData(format!(
                            "component A{d} has an orbit of size {} in target block {j}",
                            orbit.len()
                        )));
                    }
                    multiplicities[j][i] += 1;
                }
            }
        }
    }
    BlockMultiplicityData::new(source_degrees, target_degrees, multiplicities, fixed)
}

pub fn block_data_of(f: &GroupHom) -> Result<BlockMultiplicityData, GroupError> {
    block_data_from_images(f.source().kind(), f.target().kind(), &f.generator_images())
}
