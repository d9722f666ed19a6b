use serde::Serialize;

use super::{CategoryError, FiniteCategorySpec, MorId};

/// A morphism `f: a → b` and an inner `h` of `a` such that no inner `k` of
/// `b` satisfies `h then f = f then k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub morphism: String,
    pub inner: String,
    /// `h then f`.
    pub composite: String,
}

/// Checks that every inner automorphism on the domain side of a morphism
/// can be traded for one on the codomain side. Returns all failures.
pub fn verify_inner_axiom(spec: &FiniteCategorySpec) -> Result<Vec<AxiomViolation>, CategoryError> {
    spec.validate()?;
    let mut out = Vec::new();
    for f in spec.morphisms() {
        let (a, b) = (spec.source(f), spec.target(f));
        for &h in spec.inner(a) {
            let hf = spec.compose_unchecked(h, f);
            if !spec.inner(b).iter().any(|&k| spec.compose_unchecked(f, k) == hf) {
                out.push(AxiomViolation {
                    morphism: spec.morphism_name(f).to_string(),
                    inner: spec.morphism_name(h).to_string(),
                    composite: spec.morphism_name(hf).to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// The subgroup of `hom(a, a)` generated by `gens`, sorted by id. The
/// identity is always included.
pub(crate) fn generated_subgroup(spec: &FiniteCategorySpec, a: super::ObjId, gens: &[MorId]) -> Vec<MorId> {
    let mut members = vec![spec.identity(a)];
    let mut seen = std::collections::HashSet::from([spec.identity(a)]);
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens {
            let y = spec.compose_unchecked(x, g);
            if seen.insert(y) {
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

/// Replaces every inner family by the subgroup it generates.
pub fn inner_closure(spec: &FiniteCategorySpec) -> Result<FiniteCategorySpec, CategoryError> {
    spec.validate()?;
    let inner = spec
        .objects()
        .map(|a| generated_subgroup(spec, a, spec.inner(a)))
        .collect();
    spec.with_inner(inner)
}

/// Each inner family contains the identity and is closed under composition
/// (hence, being finite, is a subgroup).
pub fn is_inner_closed(spec: &FiniteCategorySpec) -> bool {
    spec.objects().all(|a| is_inner_closed_at(spec, a))
}

pub(crate) fn is_inner_closed_at(spec: &FiniteCategorySpec, a: super::ObjId) -> bool {
    let inner: std::collections::HashSet<MorId> = spec.inner(a).iter().copied().collect();
    inner.contains(&spec.identity(a))
        && inner
            .iter()
            .all(|&x| inner.iter().all(|&y| inner.contains(&spec.compose_unchecked(x, y))))
}
