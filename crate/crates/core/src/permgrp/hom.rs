use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{FiniteGroup, GroupCaps, GroupError, Permutation};

/// A group homomorphism between enumerated permutation groups, stored
/// element-wise: `images[i]` is the target index of `source.element(i)`.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<u32>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && self.source.kind() == other.source.kind()
            && self.target.kind() == other.target.kind()
    }
}

impl Eq for GroupHom {}

impl Hash for GroupHom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generator_images()
            .iter()
            .map(ToString::to_string)
            .collect();
        write!(
            f,
            "{} -> {} [{}]",
            self.source.kind(),
            self.target.kind(),
            gens.join(", ")
        )
    }
}

impl GroupHom {
    /// Builds a homomorphism from a full element table, checking the
    /// homomorphism law on every pair.
    pub fn from_table(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() || images.iter().any(|&y| y >= target.order()) {
            return Err(GroupError::NotAHomomorphism("table has the wrong shape".into()));
        }
        let hom = GroupHom {
            source,
            target,
            images: images.into_iter().map(|y| y as u32).collect(),
        };
        hom.check_pairwise()?;
        Ok(hom)
    }

    pub(crate) fn from_raw(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<u32>) -> Self {
        GroupHom {
            source,
            target,
            images,
        }
    }

    fn check_pairwise(&self) -> Result<(), GroupError> {
        let g = &self.source;
        let h = &self.target;
        for x in 0..g.order() {
            for y in 0..g.order() {
                let lhs = self.images[g.mul(x, y)] as usize;
                let rhs = h.mul(self.images[x] as usize, self.images[y] as usize);
                if lhs != rhs {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "f({} * {}) != f({}) * f({})",
                        g.element(x),
                        g.element(y),
                        g.element(x),
                        g.element(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            images: (0..group.order() as u32).collect(),
        }
    }

    pub fn trivial(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![0; source.order()],
        }
    }

    /// The inner automorphism `x ↦ h⁻¹ x h` of `group`, for `h` an element.
    pub fn inner(group: &Arc<FiniteGroup>, h: &Permutation) -> Result<Self, GroupError> {
        if !group.contains(h) {
            return Err(GroupError::NotInGroup(h.to_string()));
        }
        let images = group
            .elements()
            .iter()
            .map(|x| group.index_of(&x.conjugate_by(h)).expect("normal") as u32)
            .collect();
        Ok(GroupHom::from_raw(group.clone(), group.clone(), images))
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    /// Target index of the image of source element `i`.
    pub fn image_index(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn image_indices(&self) -> &[u32] {
        &self.images
    }

    pub fn image_of_index(&self, i: usize) -> &Permutation {
        self.target.element(self.images[i] as usize)
    }

    pub fn apply(&self, x: &Permutation) -> Option<&Permutation> {
        self.source.index_of(x).map(|i| self.image_of_index(i))
    }

    pub fn generator_images(&self) -> Vec<Permutation> {
        self.source
            .generators()
            .iter()
            .map(|s| self.apply(s).expect("generator in group").clone())
            .collect()
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target.kind() != next.source.kind() {
            return Err(GroupError::NotComposable(format!(
                "{} vs {}",
                self.target.kind(),
                next.source.kind()
            )));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|&y| next.images[y as usize]).collect(),
        })
    }

    /// Post-composes with conjugation by `h` (any permutation of the target's
    /// points): `x ↦ h⁻¹ f(x) h`. Fails when the result leaves the target.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<GroupHom, GroupError> {
        let images = self
            .images
            .iter()
            .map(|&y| {
                let c = self.target.element(y as usize).conjugate_by(h);
                self.target
                    .index_of(&c)
                    .map(|i| i as u32)
                    .ok_or_else(|| GroupError::NotInGroup(c.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(GroupHom::from_raw(self.source.clone(), self.target.clone(), images))
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&y| y == 0).count() == 1
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&y| y == 0)
    }
}

/// Extends generator images (as target indices) along the Cayley graph of
/// the source. Returns `None` when two words for the same element disagree.
///
/// Checking `f(x·s) = f(x)·f(s)` for every element `x` and generator `s`
/// is equivalent to the full homomorphism law, since the generators
/// generate.
pub(crate) fn extend_generator_images(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gen_images: &[usize],
) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let cayley = source.cayley();
    let mut images = vec![UNSET; source.order()];
    images[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let gen_perms: Vec<&Permutation> = gen_images.iter().map(|&i| target.element(i)).collect();
    while let Some(x) = queue.pop_front() {
        let fx = target.element(images[x] as usize);
        for (s, gp) in gen_perms.iter().enumerate() {
            let y = cayley[x][s] as usize;
            let fy = target.index_of(&fx.then(gp)).expect("closed") as u32;
            if images[y] == UNSET {
                images[y] = fy;
                queue.push_back(y);
            } else if images[y] != fy {
                return None;
            }
        }
    }
    if images.contains(&UNSET) {
        return None;
    }
    Some(images)
}

/// Builds the homomorphism determined by images of the source's standard
/// generators, or `None` if no homomorphism has those images. The result is
/// re-checked against the full pairwise law.
pub fn hom_from_generator_images(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    images: &[Permutation],
) -> Result<Option<GroupHom>, GroupError> {
    if images.len() != source.generators().len() {
        return Err(GroupError::NotAHomomorphism(format!(
            "expected {} generator images, got {}",
            source.generators().len(),
            images.len()
        )));
    }
    let mut idx = Vec::with_capacity(images.len());
    for p in images {
        if p.degree() != target.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: target.degree(),
                found: p.degree(),
            });
        }
        idx.push(
            target
                .index_of(p)
                .ok_or_else(|| GroupError::NotInGroup(p.to_string()))?,
        );
    }
    let Some(table) = extend_generator_images(source, target, &idx) else {
        return Ok(None);
    };
    let hom = GroupHom::from_raw(source.clone(), target.clone(), table);
    hom.check_pairwise()?;
    Ok(Some(hom))
}

/// Short words in the generators used to prune candidate images by order.
fn test_words(n_gens: usize) -> Vec<Vec<(usize, i32)>> {
    let mut words = Vec::new();
    for a in 0..n_gens {
        for b in (a + 1)..n_gens {
            words.push(vec![(a, 1), (b, 1)]);
            words.push(vec![(a, 1), (b, 2)]);
            words.push(vec![(a, 2), (b, 1)]);
            words.push(vec![(a, 1), (b, -1)]);
            words.push(vec![(a, 1), (b, 1), (a, -1), (b, -1)]);
        }
    }
    words
}

fn power(p: &Permutation, e: i32) -> Permutation {
    let base = if e < 0 { p.inverse() } else { p.clone() };
    let mut acc = Permutation::identity(p.degree());
    for _ in 0..e.unsigned_abs() {
        acc = acc.then(&base);
    }
    acc
}

fn eval_word(gens: &[&Permutation], word: &[(usize, i32)], degree: usize) -> Permutation {
    word.iter()
        .fold(Permutation::identity(degree), |acc, &(s, e)| {
            acc.then(&power(gens[s], e))
        })
}

/// Generator-image search shared by [`all_homs`] and [`automorphisms`].
///
/// `candidates[s]` lists target indices allowed for generator `s`; words
/// whose image order must divide (or, if `exact`, equal) the source order
/// prune before extension.
fn search_homs(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    candidates: &[Vec<usize>],
    exact: bool,
    mut accept: impl FnMut(&GroupHom) -> bool,
    first_only: bool,
) -> Vec<GroupHom> {
    let gens: Vec<&Permutation> = source.generators().iter().collect();
    let words = test_words(gens.len());
    let word_orders: Vec<usize> = words
        .iter()
        .map(|w| eval_word(&gens, w, source.degree()).order())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let total: usize = candidates.iter().map(Vec::len).product();
    if total == 0 {
        return out;
    }
    if gens.is_empty() {
        let hom = GroupHom::trivial(source, target);
        if accept(&hom) {
            out.push(hom);
        }
        return out;
    }
    'outer: loop {
        let picked: Vec<usize> = choice.iter().enumerate().map(|(s, &c)| candidates[s][c]).collect();
        let img_perms: Vec<&Permutation> = picked.iter().map(|&i| target.element(i)).collect();
        let passes = words.iter().zip(&word_orders).all(|(w, &ord)| {
            let o = eval_word(&img_perms, w, target.degree()).order();
            if exact {
                o == ord
            } else {
                ord % o == 0
            }
        });
        if passes {
            if let Some(table) = extend_generator_images(source, target, &picked) {
                let hom = GroupHom::from_raw(source.clone(), target.clone(), table);
                if accept(&hom) {
                    out.push(hom);
                    if first_only {
                        return out;
                    }
                }
            }
        }
        // odometer, last generator fastest
        let mut s = gens.len();
        loop {
            if s == 0 {
                break 'outer;
            }
            s -= 1;
            choice[s] += 1;
            if choice[s] < candidates[s].len() {
                break;
            }
            choice[s] = 0;
        }
    }
    out
}

/// Every homomorphism `source → target`, ordered lexicographically by the
/// target indices of the generator images.
pub fn all_homs(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    let orders = target.element_orders();
    let candidates: Vec<Vec<usize>> = source
        .generators()
        .iter()
        .map(|s| {
            let o = s.order();
            (0..target.order()).filter(|&i| o % orders[i] == 0).collect()
        })
        .collect();
    search_homs(source, target, &candidates, false, |_| true, false)
}

fn automorphism_candidates(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let orders = group.element_orders();
    let sizes = group.class_sizes();
    group
        .generators()
        .iter()
        .map(|s| {
            let i = group.index_of(s).expect("generator");
            (0..group.order())
                .filter(|&j| orders[j] == orders[i] && sizes[j] == sizes[i])
                .collect()
        })
        .collect()
}

/// All automorphisms of `group`, found by searching generator images that
/// match the generators in element order and conjugacy class size.
pub fn automorphisms(group: &Arc<FiniteGroup>, caps: &GroupCaps) -> Result<Vec<GroupHom>, GroupError> {
    if group.order() > caps.max_automorphism_order {
        return Err(GroupError::OrderCap {
            order: group.order(),
            cap: caps.max_automorphism_order,
        });
    }
    let candidates = automorphism_candidates(group);
    Ok(search_homs(group, group, &candidates, true, GroupHom::is_bijective, false))
}

/// First automorphism (in search order) sending each listed generator to
/// the prescribed image; `None` entries are unconstrained.
pub fn automorphism_with_images(
    group: &Arc<FiniteGroup>,
    prescribed: &[Option<Permutation>],
    caps: &GroupCaps,
) -> Result<Option<GroupHom>, GroupError> {
    if group.order() > caps.max_automorphism_order {
        return Err(GroupError::OrderCap {
            order: group.order(),
            cap: caps.max_automorphism_order,
        });
    }
    let mut candidates = automorphism_candidates(group);
    for (s, p) in prescribed.iter().enumerate() {
        if let Some(p) = p {
            let i = group
                .index_of(p)
                .ok_or_else(|| GroupError::NotInGroup(p.to_string()))?;
            candidates[s].retain(|&j| j == i);
        }
    }
    Ok(search_homs(group, group, &candidates, true, GroupHom::is_bijective, true)
        .into_iter()
        .next())
}
