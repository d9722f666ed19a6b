use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CategoryError, ClassId, QuotientCategory};

/// A thin category recorded as data: which ordered pairs have an arrow and
/// which unordered pairs are isomorphic. Isomorphism is part of the data,
/// so inconsistent preorders (arrows both ways, no isomorphism) can be
/// written down and checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinPreorder {
    pub objects: Vec<String>,
    /// `(a, b)` means there is an arrow `a → b`.
    pub arrows: BTreeSet<(usize, usize)>,
    /// Unordered pairs `(a, b)`, `a < b`, that are isomorphic.
    pub isomorphisms: BTreeSet<(usize, usize)>,
}

/// Objects with arrows both ways that are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorBernsteinViolation {
    pub left: String,
    pub right: String,
}

impl ThinPreorder {
    /// Reads arrows and isomorphisms off a thin quotient; isomorphism means
    /// the two classes compose to identities both ways.
    pub fn from_quotient(q: &QuotientCategory<'_>) -> Result<Self, CategoryError> {
        let spec = q.spec();
        let mut arrows = BTreeSet::new();
        let mut isomorphisms = BTreeSet::new();
        for a in spec.objects() {
            for b in spec.objects() {
                let hom = q.hom(a, b);
                if hom.len() > 1 {
                    return Err(CategoryError::NotThin {
                        from: spec.object_name(a).to_string(),
                        to: spec.object_name(b).to_string(),
                        classes: hom.len(),
                    });
                }
                if let Some(&c) = hom.first() {
                    arrows.insert((a.index(), b.index()));
                    if a < b && is_iso(q, c) {
                        isomorphisms.insert((a.index(), b.index()));
                    }
                }
            }
        }
        Ok(ThinPreorder {
            objects: spec.objects().map(|a| spec.object_name(a).to_string()).collect(),
            arrows,
            isomorphisms,
        })
    }
}

fn is_iso(q: &QuotientCategory<'_>, c: ClassId) -> bool {
    q.inverse(c).is_some()
}

/// Pairs of distinct objects with arrows both ways but no isomorphism,
/// each unordered pair reported once.
pub fn cantor_bernstein_violations(p: &ThinPreorder) -> Vec<CantorBernsteinViolation> {
    let mut out = Vec::new();
    for a in 0..p.objects.len() {
        for b in a + 1..p.objects.len() {
            if p.arrows.contains(&(a, b)) && p.arrows.contains(&(b, a)) && !p.isomorphisms.contains(&(a, b)) {
                out.push(CantorBernsteinViolation {
                    left: p.objects[a].clone(),
                    right: p.objects[b].clone(),
                });
            }
        }
    }
    out
}

/// Cantor–Bernstein on a thin quotient: arrows both ways force an
/// isomorphism. Errors if the quotient is not thin.
pub fn cantor_bernstein_check(
    q: &QuotientCategory<'_>,
) -> Result<Vec<CantorBernsteinViolation>, CategoryError> {
    Ok(cantor_bernstein_violations(&ThinPreorder::from_quotient(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_without_isomorphism() {
        let p = ThinPreorder {
            objects: vec!["x".into(), "y".into(), "z".into()],
            arrows: [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2)].into_iter().collect(),
            isomorphisms: BTreeSet::new(),
        };
        let v = cantor_bernstein_violations(&p);
        assert_eq!(v, vec![CantorBernsteinViolation { left: "x".into(), right: "y".into() }]);
        let mut fixed = p.clone();
        fixed.isomorphisms.insert((0, 1));
        assert!(cantor_bernstein_violations(&fixed).is_empty());
    }
}
