use std::collections::HashMap;

use super::{enumerate_homs, AlgebraObject, HomFilter, MatcatError, MultiplicityMorphism};
use crate::quotient::{CategoryError, FiniteCategorySpec, MorId, SpecBuilder};

/// A finite piece of the multiplicity-matrix category as an explicit
/// table, with the morphism behind every id.
#[derive(Debug, Clone)]
pub struct MatcatExport {
    pub spec: FiniteCategorySpec,
    pub objects: Vec<AlgebraObject>,
    /// Indexed by [`MorId`].
    pub morphisms: Vec<MultiplicityMorphism>,
}

impl MatcatExport {
    pub fn morphism(&self, f: MorId) -> &MultiplicityMorphism {
        &self.morphisms[f.index()]
    }
}

/// Size vectors with entry sum at most `bound`, ordered by length and then
/// lexicographically: `(1), (2), (1,1)` for bound 2.
pub fn objects_up_to(bound: u64) -> Vec<AlgebraObject> {
    fn go(left: u64, cur: &mut Vec<u64>, len: usize, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let slots_after = (len - cur.len() - 1) as u64;
        for x in 1..=left.saturating_sub(slots_after) {
            cur.push(x);
            go(left - x, cur, len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..=bound as usize {
        go(bound, &mut Vec::new(), len, &mut out);
    }
    out.into_iter().map(|v| AlgebraObject::new(v).expect("positive")).collect()
}

/// All objects with size sum at most `bound` and all admissible matrices
/// between them (the zero matrix included). The inner families are just
/// the identities: these morphisms are already classes.
pub fn export_as_spec(bound: u64) -> Result<MatcatExport, MatcatError> {
    if bound == 0 {
        return Err(MatcatError::InvalidObject("size bound must be at least 1".into()));
    }
    let objects = objects_up_to(bound);
    let wrap = |e: CategoryError| MatcatError::InvalidObject(e.to_string());
    let mut b = SpecBuilder::new();
    let ids: Vec<_> = objects
        .iter()
        .map(|o| b.add_object(o.to_string()))
        .collect::<Result<_, _>>()
        .map_err(wrap)?;
    let mut morphisms = Vec::new();
    let mut index: HashMap<MultiplicityMorphism, MorId> = HashMap::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, c) in objects.iter().enumerate() {
            for f in enumerate_homs(a, c, HomFilter::default()) {
                let id = b.add_morphism(f.to_string(), ids[i], ids[j]).map_err(wrap)?;
                index.insert(f.clone(), id);
                morphisms.push(f);
            }
        }
    }
    for (i, a) in objects.iter().enumerate() {
        let id = index[&MultiplicityMorphism::identity(a)];
        b.set_identity(ids[i], id).map_err(wrap)?;
        b.add_inner(ids[i], id).map_err(wrap)?;
    }
    let spec = b
        .build(|f, g| {
            let fg = morphisms[f.index()].then(&morphisms[g.index()]).ok()?;
            index.get(&fg).copied()
        })
        .map_err(wrap)?;
    Ok(MatcatExport {
        spec,
        objects,
        morphisms,
    })
}
