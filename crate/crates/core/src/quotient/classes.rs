use std::collections::BTreeSet;

use serde::Serialize;

use super::axiom::{is_inner_closed_at, verify_inner_axiom};
use super::{CategoryError, FiniteCategorySpec, MorId, ObjId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassId(pub u32);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of parallel morphisms, sorted by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub source: ObjId,
    pub target: ObjId,
    pub members: Vec<MorId>,
}

/// A category whose morphisms are classes of morphisms of `spec`, with
/// composition computed on representatives.
#[derive(Debug)]
pub struct QuotientCategory<'a> {
    spec: &'a FiniteCategorySpec,
    classes: Vec<MorphismClass>,
    class_of: Vec<ClassId>,
    homs: Vec<Vec<ClassId>>,
    outgoing: Vec<Vec<ClassId>>,
    position_out: Vec<u32>,
    row_offset: Vec<usize>,
    compose: Vec<ClassId>,
}

/// Orbit of `f: a → b` under `f ↦ f then k`, `k ∈ inner(b)`.
pub fn codomain_orbit(spec: &FiniteCategorySpec, f: MorId) -> Vec<MorId> {
    let mut orbit: Vec<MorId> = spec
        .inner(spec.target(f))
        .iter()
        .map(|&k| spec.compose_unchecked(f, k))
        .chain([f])
        .collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

/// Orbit of `f` under both `h then f` and `f then k`, closed under
/// repetition (so the family need not be a group).
pub fn two_sided_orbit(spec: &FiniteCategorySpec, f: MorId) -> Vec<MorId> {
    let mut seen = BTreeSet::from([f]);
    let mut queue = vec![f];
    while let Some(x) = queue.pop() {
        let (a, b) = (spec.source(x), spec.target(x));
        let left = spec.inner(a).iter().map(|&h| spec.compose_unchecked(h, x));
        let right = spec.inner(b).iter().map(|&k| spec.compose_unchecked(x, k));
        for y in left.chain(right).collect::<Vec<_>>() {
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The classifying category: morphisms modulo inner automorphisms of the
/// codomain.
///
/// Refuses a spec whose inner families are not subgroups (run
/// [`inner_closure`](super::inner_closure) first) or that fails the
/// exchange axiom; then checks that every product of two classes is a
/// single class.
pub fn quotient(spec: &FiniteCategorySpec) -> Result<QuotientCategory<'_>, CategoryError> {
    spec.validate()?;
    if let Some(a) = spec.objects().find(|&a| !is_inner_closed_at(spec, a)) {
        return Err(CategoryError::InnerNotClosed(spec.object_name(a).to_string()));
    }
    let violations = verify_inner_axiom(spec)?;
    if !violations.is_empty() {
        return Err(CategoryError::AxiomViolations(violations));
    }
    let mut assigned = vec![false; spec.morphism_count()];
    let mut partition = Vec::new();
    for f in spec.morphisms() {
        if assigned[f.index()] {
            continue;
        }
        let orbit = codomain_orbit(spec, f);
        for &g in &orbit {
            assigned[g.index()] = true;
        }
        partition.push(orbit);
    }
    QuotientCategory::from_classes(spec, partition)
}

impl<'a> QuotientCategory<'a> {
    /// Builds the quotient for an arbitrary partition of the morphisms into
    /// parallel classes, provided composition is well defined on it. Does
    /// not require the classes to be orbits of anything.
    pub fn from_classes(
        spec: &'a FiniteCategorySpec,
        partition: Vec<Vec<MorId>>,
    ) -> Result<Self, CategoryError> {
        spec.validate()?;
        let n_obj = spec.object_count();
        let mut class_of = vec![None; spec.morphism_count()];
        let mut classes = Vec::with_capacity(partition.len());
        for (i, mut members) in partition.into_iter().enumerate() {
            members.sort_unstable();
            members.dedup();
            let Some(&first) = members.first() else {
                return Err(CategoryError::InvalidPartition("empty class".into()));
            };
            let (a, b) = (spec.source(first), spec.target(first));
            for &f in &members {
                if f.index() >= spec.morphism_count() {
                    return Err(CategoryError::UnknownMorphism(format!("#{}", f.0)));
                }
                if spec.source(f) != a || spec.target(f) != b {
                    return Err(CategoryError::InvalidPartition(format!(
                        "class mixes {} and {}",
                        spec.morphism_name(first),
                        spec.morphism_name(f)
                    )));
                }
                if class_of[f.index()].replace(ClassId(i as u32)).is_some() {
                    return Err(CategoryError::InvalidPartition(format!(
                        "{} lies in two classes",
                        spec.morphism_name(f)
                    )));
                }
            }
            classes.push(MorphismClass {
                source: a,
                target: b,
                members,
            });
        }
        let class_of: Vec<ClassId> = class_of
            .into_iter()
            .enumerate()
            .map(|(f, c)| {
                c.ok_or_else(|| {
                    CategoryError::InvalidPartition(format!(
                        "{} lies in no class",
                        spec.morphism_name(MorId(f as u32))
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        // classes in the order of their smallest member
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&i| classes[i].members[0]);
        let mut renumber = vec![0u32; classes.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new as u32;
        }
        let classes: Vec<MorphismClass> = order.iter().map(|&i| classes[i].clone()).collect();
        let class_of: Vec<ClassId> = class_of.iter().map(|c| ClassId(renumber[c.index()])).collect();

        let mut homs = vec![Vec::new(); n_obj * n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut position_out = Vec::with_capacity(classes.len());
        for (i, c) in classes.iter().enumerate() {
            homs[c.source.index() * n_obj + c.target.index()].push(ClassId(i as u32));
            position_out.push(outgoing[c.source.index()].len() as u32);
            outgoing[c.source.index()].push(ClassId(i as u32));
        }
        let mut row_offset = Vec::with_capacity(classes.len() + 1);
        let mut total = 0;
        for c in &classes {
            row_offset.push(total);
            total += outgoing[c.target.index()].len();
        }
        row_offset.push(total);
        let mut q = QuotientCategory {
            spec,
            classes,
            class_of,
            homs,
            outgoing,
            position_out,
            row_offset,
            compose: Vec::new(),
        };
        q.compose = q.class_products()?;
        Ok(q)
    }

    /// Element-wise products of all composable class pairs; each must be
    /// exactly one class.
    fn class_products(&self) -> Result<Vec<ClassId>, CategoryError> {
        let spec = self.spec;
        let mut table = Vec::with_capacity(*self.row_offset.last().unwrap_or(&0));
        let mut product = Vec::new();
        for c1 in &self.classes {
            for &c2_id in &self.outgoing[c1.target.index()] {
                let c2 = &self.classes[c2_id.index()];
                product.clear();
                product.extend(
                    c1.members
                        .iter()
                        .flat_map(|&f| c2.members.iter().map(move |&g| spec.compose_unchecked(f, g))),
                );
                product.sort_unstable();
                product.dedup();
                let target = self.class_of[product[0].index()];
                if product != self.classes[target.index()].members {
                    return Err(CategoryError::ClassProductNotAClass(format!(
                        "class of {} then class of {}",
                        spec.morphism_name(c1.members[0]),
                        spec.morphism_name(c2.members[0])
                    )));
                }
                table.push(target);
            }
        }
        Ok(table)
    }

    /// Classes with source `a`.
    pub fn outgoing(&self, a: ObjId) -> &[ClassId] {
        &self.outgoing[a.index()]
    }

    fn compose_unchecked(&self, c1: ClassId, c2: ClassId) -> ClassId {
        self.compose[self.row_offset[c1.index()] + self.position_out[c2.index()] as usize]
    }

    pub fn spec(&self) -> &'a FiniteCategorySpec {
        self.spec
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[MorphismClass] {
        &self.classes
    }

    pub fn class(&self, c: ClassId) -> &MorphismClass {
        &self.classes[c.index()]
    }

    pub fn class_of(&self, f: MorId) -> ClassId {
        self.class_of[f.index()]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[ClassId] {
        &self.homs[a.index() * self.spec.object_count() + b.index()]
    }

    pub fn compose(&self, c1: ClassId, c2: ClassId) -> Option<ClassId> {
        (self.class(c1).target == self.class(c2).source).then(|| self.compose_unchecked(c1, c2))
    }

    pub fn identity(&self, a: ObjId) -> ClassId {
        self.class_of(self.spec.identity(a))
    }

    /// A two-sided inverse class, if any.
    pub fn inverse(&self, c: ClassId) -> Option<ClassId> {
        let MorphismClass { source, target, .. } = *self.class(c);
        self.hom(target, source).iter().copied().find(|&d| {
            self.compose(c, d) == Some(self.identity(source))
                && self.compose(d, c) == Some(self.identity(target))
        })
    }

    /// At most one class in every hom-set.
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// Identity and associativity laws on classes, on every composable triple.
    pub fn check_laws(&self) -> Result<(), CategoryError> {
        let name = |c: ClassId| self.spec.morphism_name(self.classes[c.index()].members[0]).to_string();
        for (i, c) in self.classes.iter().enumerate() {
            let c_id = ClassId(i as u32);
            if self.compose(self.identity(c.source), c_id) != Some(c_id)
                || self.compose(c_id, self.identity(c.target)) != Some(c_id)
            {
                return Err(CategoryError::IdentityLaw(name(c_id)));
            }
            for &d in self.outgoing(c.target) {
                let cd = self.compose_unchecked(c_id, d);
                for &e in self.outgoing(self.class(d).target) {
                    if self.compose_unchecked(cd, e)
                        != self.compose_unchecked(c_id, self.compose_unchecked(d, e))
                    {
                        return Err(CategoryError::NotAssociative(format!(
                            "classes of {}, {}, {}",
                            name(c_id),
                            name(d),
                            name(e)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphism names of a class, for reports.
    pub fn member_names(&self, c: ClassId) -> Vec<String> {
        self.class(c)
            .members
            .iter()
            .map(|&f| self.spec.morphism_name(f).to_string())
            .collect()
    }
}

/// A morphism lying in an invertible class without being invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperStrongViolation {
    pub morphism: String,
    pub class_members: Vec<String>,
}

/// Morphisms whose class is invertible in the quotient but which are not
/// invertible themselves.
pub fn is_super_strong(q: &QuotientCategory<'_>) -> Vec<SuperStrongViolation> {
    let spec = q.spec();
    let mut out = Vec::new();
    for i in 0..q.class_count() {
        let c = ClassId(i as u32);
        if q.inverse(c).is_none() {
            continue;
        }
        for &f in &q.class(c).members {
            if !spec.is_invertible(f) {
                out.push(SuperStrongViolation {
                    morphism: spec.morphism_name(f).to_string(),
                    class_members: q.member_names(c),
                });
            }
        }
    }
    out
}

/// Two classes whose element-wise product meets several classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassProductDefect {
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// The classes met by the product, each as its member list.
    pub split: Vec<Vec<String>>,
    /// For each class in `split`, one factorization `[f, g, f then g]`.
    pub examples: Vec<[String; 3]>,
}

/// Forms two-sided orbits under the designated family, which need not
/// satisfy the exchange axiom, and returns the first pair of composable
/// classes whose product is not a single class.
pub fn class_product_defect(spec: &FiniteCategorySpec) -> Result<Option<ClassProductDefect>, CategoryError> {
    spec.validate()?;
    let mut class_of = vec![u32::MAX; spec.morphism_count()];
    let mut classes: Vec<Vec<MorId>> = Vec::new();
    for f in spec.morphisms() {
        if class_of[f.index()] != u32::MAX {
            continue;
        }
        let orbit = two_sided_orbit(spec, f);
        for &g in &orbit {
            class_of[g.index()] = classes.len() as u32;
        }
        classes.push(orbit);
    }
    let names = |c: &[MorId]| c.iter().map(|&f| spec.morphism_name(f).to_string()).collect::<Vec<_>>();
    for c1 in &classes {
        let b = spec.target(c1[0]);
        let mut seen_right = BTreeSet::new();
        for &g0 in spec.outgoing(b) {
            let c2_id = class_of[g0.index()];
            if !seen_right.insert(c2_id) {
                continue;
            }
            let c2 = &classes[c2_id as usize];
            let mut hit: Vec<(u32, [MorId; 3])> = Vec::new();
            for &f in c1 {
                for &g in c2 {
                    let fg = spec.compose_unchecked(f, g);
                    let c = class_of[fg.index()];
                    if !hit.iter().any(|(x, _)| *x == c) {
                        hit.push((c, [f, g, fg]));
                    }
                }
            }
            if hit.len() >= 2 {
                hit.sort_by_key(|(c, _)| *c);
                return Ok(Some(ClassProductDefect {
                    left: names(c1),
                    right: names(c2),
                    split: hit.iter().map(|(c, _)| names(&classes[*c as usize])).collect(),
                    examples: hit
                        .iter()
                        .map(|(_, m)| m.map(|f| spec.morphism_name(f).to_string()))
                        .collect(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{alternating_group, Permutation};
    use crate::quotient::{
        cantor_bernstein_check, finite_sets_all_maps_instance, finite_sets_injections_instance,
        group_endomorphism_category, group_hom_category, group_hom_name, inner_closure, SpecBuilder,
    };

    #[test]
    fn a5_endomorphisms_modulo_conjugation() {
        let a5 = alternating_group(5).unwrap();
        let spec = group_endomorphism_category(&a5).unwrap();
        assert_eq!(spec.morphism_count(), 121);
        assert!(verify_inner_axiom(&spec).unwrap().is_empty());
        let q = quotient(&spec).unwrap();
        // trivial map, inner automorphisms, outer automorphisms
        let mut sizes: Vec<usize> = q.classes().iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 60, 60]);
        q.check_laws().unwrap();
        assert!(is_super_strong(&q).is_empty());
    }

    #[test]
    fn codomain_orbits_are_two_sided_orbits() {
        let groups = [alternating_group(3).unwrap(), alternating_group(4).unwrap()];
        let spec = group_hom_category(&groups).unwrap();
        assert!(verify_inner_axiom(&spec).unwrap().is_empty());
        for f in spec.morphisms() {
            assert_eq!(codomain_orbit(&spec, f), two_sided_orbit(&spec, f));
        }
        let q = quotient(&spec).unwrap();
        q.check_laws().unwrap();
        for f in spec.morphisms() {
            for &g in spec.outgoing(spec.target(f)) {
                let fg = spec.compose(f, g).unwrap();
                assert_eq!(q.class_of(fg), q.compose(q.class_of(f), q.class_of(g)).unwrap());
            }
        }
    }

    #[test]
    fn injections_give_cardinals() {
        let spec = finite_sets_injections_instance(4).unwrap();
        let q = quotient(&spec).unwrap();
        assert!(q.is_thin());
        assert_eq!(q.class_count(), 10);
        for a in spec.objects() {
            for b in spec.objects() {
                assert_eq!(q.hom(a, b).len(), usize::from(a <= b));
            }
        }
        let two = spec.object_id("2").unwrap();
        let three = spec.object_id("3").unwrap();
        assert_eq!(spec.hom(two, three).len(), 6);
        assert!(cantor_bernstein_check(&q).unwrap().is_empty());
        assert!(class_product_defect(&spec).unwrap().is_none());
    }

    #[test]
    fn all_maps_split_a_product() {
        let spec = finite_sets_all_maps_instance(3).unwrap();
        assert!(matches!(quotient(&spec), Err(CategoryError::AxiomViolations(_))));
        let w = class_product_defect(&spec).unwrap().unwrap();
        assert!(w.split.len() >= 2);
        assert!(w.examples.iter().any(|[_, _, fg]| fg == "2->2:[1,1]" || fg == "2->2:[2,2]"));
    }

    #[test]
    fn trivial_family_gives_no_defect_and_an_isomorphic_quotient() {
        let spec = finite_sets_all_maps_instance(2).unwrap();
        let trivial = spec.with_inner(spec.objects().map(|a| vec![spec.identity(a)]).collect()).unwrap();
        assert!(class_product_defect(&trivial).unwrap().is_none());
        let q = quotient(&trivial).unwrap();
        assert_eq!(q.class_count(), spec.morphism_count());
    }

    #[test]
    fn closure_of_a_single_conjugation() {
        let a4 = alternating_group(4).unwrap();
        let spec = group_endomorphism_category(&a4).unwrap();
        let c = Permutation::parse_cycles(4, "(123)").unwrap();
        let inn = crate::permgrp::GroupHom::inner(&a4, &c).unwrap();
        let name = spec.morphism_id(&group_hom_name(&inn)).unwrap();
        let one = spec.with_inner(vec![vec![name]]).unwrap();
        assert!(matches!(quotient(&one), Err(CategoryError::InnerNotClosed(_))));
        let closed = inner_closure(&one).unwrap();
        assert_eq!(closed.inner(closed.objects().next().unwrap()).len(), 3);
        let again = inner_closure(&closed).unwrap();
        assert_eq!(again.inner(ObjId(0)), closed.inner(ObjId(0)));
        // closure of the full family leaves the partition unchanged
        let full = inner_closure(&spec).unwrap();
        let (q1, q2) = (quotient(&spec).unwrap(), quotient(&full).unwrap());
        assert_eq!(q1.classes(), q2.classes());
    }

    #[test]
    fn super_strong_negative_control() {
        // one object with id and an idempotent e, both placed in one class
        let mut b = SpecBuilder::new();
        let x = b.add_object("x").unwrap();
        let id = b.add_morphism("id", x, x).unwrap();
        let e = b.add_morphism("e", x, x).unwrap();
        b.set_identity(x, id).unwrap();
        let spec = b.build(|f, g| Some(if f == id { g } else if g == id { f } else { e })).unwrap();
        let q = QuotientCategory::from_classes(&spec, vec![vec![id, e]]).unwrap();
        let v = is_super_strong(&q);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].morphism, "e");
        let q = quotient(&spec).unwrap_err();
        assert!(matches!(q, CategoryError::InnerNotClosed(_)));
    }

    #[test]
    fn partitions_must_be_compatible() {
        let spec = finite_sets_all_maps_instance(2).unwrap();
        // all maps 2 → 2 in one class, but 1 → 2 maps kept apart
        let mut partition: Vec<Vec<MorId>> = Vec::new();
        let two = spec.object_id("2").unwrap();
        partition.push(spec.hom(two, two).to_vec());
        for f in spec.morphisms() {
            if !(spec.source(f) == two && spec.target(f) == two) {
                partition.push(vec![f]);
            }
        }
        assert!(matches!(
            QuotientCategory::from_classes(&spec, partition),
            Err(CategoryError::ClassProductNotAClass(_))
        ));
    }
}
