use proptest::prelude::*;

use outclass::matcat::{
    compose, enumerate_homs, hom_exists, identity, AlgebraObject, HomFilter, IntMatrix, MultiplicityMorphism,
};

fn object() -> impl Strategy<Value = AlgebraObject> {
    prop::collection::vec(1u64..=6, 1..=3).prop_map(|v| AlgebraObject::new(v).unwrap())
}

/// An admissible matrix `a → b`: each row spends part of its target size,
/// entry by entry, with `raw` choosing how much.
fn morphism_from(a: &AlgebraObject, b: &AlgebraObject, raw: &[u64]) -> MultiplicityMorphism {
    let mut data = Vec::new();
    let mut it = raw.iter().cycle();
    for &budget in b.sizes() {
        let mut left = budget;
        for &s in a.sizes() {
            let x = it.next().unwrap() % (left / s + 1);
            left -= x * s;
            data.push(x);
        }
    }
    let m = IntMatrix::new(b.len(), a.len(), data).unwrap();
    MultiplicityMorphism::new(a.clone(), b.clone(), m).unwrap()
}

fn chain(len: usize) -> impl Strategy<Value = Vec<MultiplicityMorphism>> {
    (
        prop::collection::vec(object(), len + 1),
        prop::collection::vec(prop::collection::vec(any::<u64>(), 9), len),
    )
        .prop_map(|(objs, raws)| {
            raws.iter()
                .enumerate()
                .map(|(i, raw)| morphism_from(&objs[i], &objs[i + 1], raw))
                .collect()
        })
}

fn naive(f: &MultiplicityMorphism, g: &MultiplicityMorphism) -> Vec<Vec<u64>> {
    let (a, b) = (g.matrix(), f.matrix());
    (0..a.rows())
        .map(|i| (0..b.cols()).map(|j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum()).collect())
        .collect()
}

proptest! {
    #[test]
    fn composite_is_admissible_and_matches_naive_product(c in chain(2)) {
        let fg = c[0].then(&c[1]).unwrap();
        prop_assert_eq!(fg.matrix().to_rows(), naive(&c[0], &c[1]));
        let used = fg.matrix().mul_vec(c[0].source().sizes()).unwrap();
        prop_assert!(used.iter().zip(c[1].target().sizes()).all(|(u, t)| u <= t));
        prop_assert_eq!(compose(&c[0], &c[1]).unwrap(), fg);
    }

    #[test]
    fn identities_are_neutral(c in chain(1)) {
        let f = &c[0];
        prop_assert_eq!(&identity(f.source()).then(f).unwrap(), f);
        prop_assert_eq!(&f.then(&identity(f.target())).unwrap(), f);
    }

    #[test]
    fn composition_is_associative(c in chain(3)) {
        let left = c[0].then(&c[1]).unwrap().then(&c[2]).unwrap();
        let right = c[0].then(&c[1].then(&c[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unital_maps_compose_to_unital_maps(c in chain(2)) {
        if c.iter().all(MultiplicityMorphism::is_unital) {
            prop_assert!(c[0].then(&c[1]).unwrap().is_unital());
        }
    }

    #[test]
    fn hom_exists_agrees_with_enumeration(a in object(), b in object(), unital: bool, allow_zero: bool) {
        let filter = HomFilter { unital, allow_zero };
        let all = enumerate_homs(&a, &b, filter);
        prop_assert_eq!(hom_exists(&a, &b, filter), !all.is_empty());
        for f in &all {
            prop_assert!(!unital || f.is_unital());
            prop_assert!(allow_zero || !f.is_zero());
        }
    }

    #[test]
    fn inverses_are_inverse(c in chain(1)) {
        let f = &c[0];
        if let Some(g) = f.inverse() {
            prop_assert_eq!(f.then(&g).unwrap(), identity(f.source()));
            prop_assert_eq!(g.then(f).unwrap(), identity(f.target()));
        }
        prop_assert_eq!(f.inverse().is_some(), f.is_isomorphism());
    }
}

#[test]
fn enumeration_counts_rows_independently() {
    // unital maps (1,2) -> (5,3): rows (x, y) with x + 2y = 5 or 3
    let a = AlgebraObject::parse("(1,2)").unwrap();
    let b = AlgebraObject::parse("(5,3)").unwrap();
    let homs = enumerate_homs(&a, &b, HomFilter { unital: true, allow_zero: true });
    assert_eq!(homs.len(), 3 * 2);
}
