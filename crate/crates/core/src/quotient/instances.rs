use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use super::{CategoryError, FiniteCategorySpec, MorId, SpecBuilder};
use crate::permgrp::{all_homs, FiniteGroup, GroupHom, HomRecord};

fn map_name(a: usize, b: usize, images: &[usize]) -> String {
    format!("{a}->{b}:[{}]", images.iter().map(|x| x + 1).join(","))
}

/// Sets `{1..k}` for `k = 1..=max_size` with the given maps between them;
/// inner families are all bijections. Objects are named `"1"`, `"2"`, ..;
/// a map `a → b` is named by its 1-based image list, e.g. `"3->2:[1,1,2]"`.
fn finite_sets_instance(
    max_size: usize,
    maps: impl Fn(usize, usize) -> Vec<Vec<usize>>,
) -> Result<FiniteCategorySpec, CategoryError> {
    if max_size == 0 {
        return Err(CategoryError::InvalidInstance("max_size must be at least 1".into()));
    }
    let mut b = SpecBuilder::new();
    let objs: Vec<_> = (1..=max_size)
        .map(|k| b.add_object(k.to_string()))
        .collect::<Result<_, _>>()?;
    let mut index: HashMap<(usize, usize, Vec<usize>), MorId> = HashMap::new();
    let mut data: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for s in 1..=max_size {
        for t in 1..=max_size {
            for m in maps(s, t) {
                let id = b.add_morphism(map_name(s, t, &m), objs[s - 1], objs[t - 1])?;
                index.insert((s, t, m.clone()), id);
                data.push((s, t, m));
            }
        }
    }
    for s in 1..=max_size {
        let id: Vec<usize> = (0..s).collect();
        b.set_identity(objs[s - 1], index[&(s, s, id)])?;
        for p in (0..s).permutations(s) {
            b.add_inner(objs[s - 1], index[&(s, s, p)])?;
        }
    }
    b.build(|f, g| {
        let (s, _, fm) = &data[f.index()];
        let (_, t, gm) = &data[g.index()];
        let composite: Vec<usize> = fm.iter().map(|&x| gm[x]).collect();
        index.get(&(*s, *t, composite)).copied()
    })
}

/// Finite sets of sizes `1..=max_size` with injective maps.
pub fn finite_sets_injections_instance(max_size: usize) -> Result<FiniteCategorySpec, CategoryError> {
    finite_sets_instance(max_size, |s, t| (0..t).permutations(s).collect())
}

/// Finite sets of sizes `1..=max_size` with all maps.
pub fn finite_sets_all_maps_instance(max_size: usize) -> Result<FiniteCategorySpec, CategoryError> {
    finite_sets_instance(max_size, |s, t| {
        (0..s).map(|_| 0..t).multi_cartesian_product().collect()
    })
}

/// Identifier used for a homomorphism in [`group_hom_category`].
pub fn group_hom_name(f: &GroupHom) -> String {
    let rec = HomRecord::from(f);
    format!(
        "{}->{}[{}]",
        f.source().kind(),
        f.target().kind(),
        rec.images.iter().join(";")
    )
}

/// Groups as objects, all homomorphisms between them as morphisms, and
/// conjugations by target elements as the inner families.
pub fn group_hom_category(groups: &[Arc<FiniteGroup>]) -> Result<FiniteCategorySpec, CategoryError> {
    let mut b = SpecBuilder::new();
    let objs: Vec<_> = groups
        .iter()
        .map(|g| b.add_object(g.kind().to_string()))
        .collect::<Result<_, _>>()?;
    let mut homs: Vec<GroupHom> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<u32>), MorId> = HashMap::new();
    let mut endpoints = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        for (j, h) in groups.iter().enumerate() {
            for f in all_homs(g, h) {
                let id = b.add_morphism(group_hom_name(&f), objs[i], objs[j])?;
                index.insert((i, j, f.image_indices().to_vec()), id);
                endpoints.push((i, j));
                homs.push(f);
            }
        }
    }
    for (i, g) in groups.iter().enumerate() {
        let id = GroupHom::identity(g);
        b.set_identity(objs[i], index[&(i, i, id.image_indices().to_vec())])?;
        for x in g.elements() {
            let inn = GroupHom::inner(g, x).map_err(|e| CategoryError::InvalidInstance(e.to_string()))?;
            b.add_inner(objs[i], index[&(i, i, inn.image_indices().to_vec())])?;
        }
    }
    b.build(|f, g| {
        let fg = homs[f.index()].then(&homs[g.index()]).ok()?;
        index
            .get(&(endpoints[f.index()].0, endpoints[g.index()].1, fg.image_indices().to_vec()))
            .copied()
    })
}

/// One object (the group) whose morphisms are its endomorphisms.
pub fn group_endomorphism_category(group: &Arc<FiniteGroup>) -> Result<FiniteCategorySpec, CategoryError> {
    group_hom_category(std::slice::from_ref(group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(finite_sets_injections_instance(3).unwrap().morphism_count(), 6 + 8 + 6);
        assert_eq!(finite_sets_all_maps_instance(3).unwrap().morphism_count(), 6 + 14 + 36);
        assert!(finite_sets_injections_instance(0).is_err());
    }

    #[test]
    fn names_and_composition() {
        let s = finite_sets_all_maps_instance(3).unwrap();
        let f = s.morphism_id("2->3:[1,2]").unwrap();
        let g = s.morphism_id("3->2:[1,1,2]").unwrap();
        assert_eq!(s.morphism_name(s.compose(f, g).unwrap()), "2->2:[1,1]");
        assert!(s.validate().is_ok());
    }
}
