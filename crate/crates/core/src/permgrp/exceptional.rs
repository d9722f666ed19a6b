use serde::Serialize;

use super::{
    alternating_group, find_conjugator, standard_embedding_between, ConjugatorClass,
    ConjugatorSearch, GroupCaps, GroupError, GroupHom, HomRecord, Permutation,
};

/// An automorphism of `A6` sending `(123)` to `(123)(456)`. No conjugation
/// in `S6` can do this, since conjugation preserves cycle type.
pub fn find_exceptional_a6_automorphism() -> Result<GroupHom, GroupError> {
    let a6 = alternating_group(6)?;
    let target = Permutation::parse_cycles(6, "(123)(456)")?;
    // generators of A6 are (123) and (23456)
    let sigma = super::automorphism_with_images(&a6, &[Some(target), None], &GroupCaps::default())?;
    Ok(sigma.expect("A6 has an automorphism taking (123) to (123)(456)"))
}

/// Evidence that the class of a composite can be strictly smaller than the
/// product of classes when classes are taken modulo all automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct NonClosureReport {
    /// `A3 → A6` on the first three symbols.
    pub e1: HomRecord,
    /// `A6 → A7` on the first six symbols.
    pub e2: HomRecord,
    pub sigma: HomRecord,
    /// `e1 then e2`.
    pub straight: HomRecord,
    /// `e1 then sigma then e2`.
    pub twisted: HomRecord,
    pub straight_cycle_type: Vec<usize>,
    pub twisted_cycle_type: Vec<usize>,
    /// `sigma` is a bijective homomorphism, so `e1 then sigma` lies in the
    /// class of `e1` modulo automorphisms of `A6`.
    pub sigma_is_automorphism: bool,
    /// Some conjugation of `S6` would put `e1 then sigma` back in the
    /// inner class of `e1`; this records that none exists.
    pub sigma_inner_in_s6: bool,
    pub both_in_class_product: bool,
    /// Backtracking search for an `A7` conjugator from straight to twisted.
    pub even_search: ConjugatorSearch,
    /// Same search over all of `S7`.
    pub symmetric_search: ConjugatorSearch,
    /// Elements of `A7` checked one by one as conjugators.
    pub scanned_a7_elements: usize,
    pub conjugate_found_by_scan: bool,
}

impl NonClosureReport {
    /// All checks came out as expected.
    pub fn holds(&self) -> bool {
        self.sigma_is_automorphism
            && !self.sigma_inner_in_s6
            && self.both_in_class_product
            && self.straight_cycle_type != self.twisted_cycle_type
            && self.even_search.conjugator.is_none()
            && self.symmetric_search.conjugator.is_none()
            && !self.conjugate_found_by_scan
    }
}

pub fn verify_nonclosure_a3_a6_a7() -> Result<NonClosureReport, GroupError> {
    let a3 = alternating_group(3)?;
    let a6 = alternating_group(6)?;
    let a7 = alternating_group(7)?;
    let e1 = standard_embedding_between(&a3, &a6, 1)?;
    let e2 = standard_embedding_between(&a6, &a7, 1)?;
    let sigma = find_exceptional_a6_automorphism()?;
    let straight = e1.then(&e2)?;
    let e1_twisted = e1.then(&sigma)?;
    let twisted = e1_twisted.then(&e2)?;

    // e1 then id_A6 is e1 itself; e1 then sigma is e1 followed by an automorphism.
    let identity = GroupHom::identity(&a6);
    let both_in_class_product = identity.is_bijective()
        && sigma.is_bijective()
        && e1.then(&identity)?.then(&e2)? == straight
        && e1_twisted.then(&e2)? == twisted;

    let sigma_inner_in_s6 = find_conjugator(
        &e1.generator_images(),
        &e1_twisted.generator_images(),
        &ConjugatorClass::Any,
    )?
    .conjugator
    .is_some();

    let from = straight.generator_images();
    let to = twisted.generator_images();
    let even_search = find_conjugator(&from, &to, &ConjugatorClass::Even)?;
    let symmetric_search = find_conjugator(&from, &to, &ConjugatorClass::Any)?;
    let conjugate_found_by_scan = a7
        .elements()
        .iter()
        .any(|h| from.iter().zip(&to).all(|(a, b)| &a.conjugate_by(h) == b));

    let three_cycle = a3.element(1).clone();
    Ok(NonClosureReport {
        straight_cycle_type: straight.apply(&three_cycle).map(Permutation::cycle_type).unwrap_or_default(),
        twisted_cycle_type: twisted.apply(&three_cycle).map(Permutation::cycle_type).unwrap_or_default(),
        sigma_is_automorphism: sigma.is_bijective(),
        sigma_inner_in_s6,
        both_in_class_product,
        even_search,
        symmetric_search,
        scanned_a7_elements: a7.order(),
        conjugate_found_by_scan,
        e1: HomRecord::from(&e1),
        e2: HomRecord::from(&e2),
        sigma: HomRecord::from(&sigma),
        straight: HomRecord::from(&straight),
        twisted: HomRecord::from(&twisted),
    })
}
