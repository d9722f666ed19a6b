use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{BratteliDiagram, BratteliError};
use crate::matcat::{IntMatrix, MultiplicityMorphism};

/// A finite zig-zag
/// `D(i₀) → E(j₀) → D(i₁) → E(j₁) → ..`
/// with down maps `Rₖ: D(iₖ) → E(jₖ)` and up maps `Sₖ: E(jₖ) → D(iₖ₊₁)`.
/// It may end on either side, so `up` has the same length as `down` or
/// one less.
///
/// Each consecutive pair of arrows is a triangle that must commute:
/// `Rₖ then Sₖ` is D's path product `iₖ → iₖ₊₁` and `Sₖ then Rₖ₊₁` is E's
/// path product `jₖ → jₖ₊₁`. The number of triangles is the witness's
/// number of segments. A witness with zero segments is a lone `R₀`; it is
/// accepted only with `i₀ = j₀ = 0` and `R₀` the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntertwiningWitness {
    pub d_indices: Vec<usize>,
    pub e_indices: Vec<usize>,
    pub down: Vec<IntMatrix>,
    pub up: Vec<IntMatrix>,
}

/// Why a well-shaped witness does not verify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessFailure {
    /// Arrow `arrow` (counting `R₀, S₀, R₁, ..` from 0) exceeds its target sizes.
    NotAdmissible { arrow: usize },
    /// The triangle made of arrows `arrow` and `arrow + 1` does not commute.
    Triangle { arrow: usize, composite: IntMatrix, path: IntMatrix },
    /// Zero segments, but not the identity at level 0 on both sides.
    Degenerate,
}

impl IntertwiningWitness {
    pub fn segments(&self) -> usize {
        (self.down.len() + self.up.len()).saturating_sub(1)
    }

    /// `(side, level)` of the zig-zag's vertices in order; side 0 is D.
    fn vertices(&self) -> Vec<(usize, usize)> {
        let n = self.down.len() + self.up.len() + 1;
        (0..n)
            .map(|t| {
                if t % 2 == 0 {
                    (0, self.d_indices[t / 2])
                } else {
                    (1, self.e_indices[t / 2])
                }
            })
            .collect()
    }

    fn arrow(&self, t: usize) -> &IntMatrix {
        if t % 2 == 0 {
            &self.down[t / 2]
        } else {
            &self.up[t / 2]
        }
    }

    fn from_zigzag(vertices: &[usize], arrows: &[IntMatrix]) -> Self {
        IntertwiningWitness {
            d_indices: vertices.iter().step_by(2).copied().collect(),
            e_indices: vertices.iter().skip(1).step_by(2).copied().collect(),
            down: arrows.iter().step_by(2).cloned().collect(),
            up: arrows.iter().skip(1).step_by(2).cloned().collect(),
        }
    }
}

fn check_shape(d: &BratteliDiagram, e: &BratteliDiagram, w: &IntertwiningWitness) -> Result<(), BratteliError> {
    let shape = |m: String| Err(BratteliError::WitnessShape(m));
    if w.down.is_empty() {
        return shape("no down maps".into());
    }
    if w.up.len() != w.down.len() && w.up.len() + 1 != w.down.len() {
        return shape(format!("{} down maps and {} up maps", w.down.len(), w.up.len()));
    }
    if w.e_indices.len() != w.down.len() || w.d_indices.len() != w.up.len() + 1 {
        return shape(format!(
            "{} D indices and {} E indices for {} down and {} up maps",
            w.d_indices.len(),
            w.e_indices.len(),
            w.down.len(),
            w.up.len()
        ));
    }
    for (name, ix) in [("D", &w.d_indices), ("E", &w.e_indices)] {
        if ix.windows(2).any(|p| p[0] >= p[1]) {
            return shape(format!("{name} indices {ix:?} are not strictly increasing"));
        }
    }
    let sides = [d, e];
    let vs = w.vertices();
    for t in 0..vs.len() - 1 {
        let (src, tgt) = (sides[vs[t].0].level(vs[t].1)?, sides[vs[t + 1].0].level(vs[t + 1].1)?);
        let m = w.arrow(t);
        if m.rows() != tgt.len() || m.cols() != src.len() {
            return shape(format!(
                "arrow {t} is {}x{} between {src} and {tgt}",
                m.rows(),
                m.cols()
            ));
        }
    }
    Ok(())
}

/// Every reason the witness fails, in arrow order. Shape problems (index
/// counts, ordering, matrix dimensions, missing levels) are errors instead.
pub fn witness_failures(
    d: &BratteliDiagram,
    e: &BratteliDiagram,
    w: &IntertwiningWitness,
) -> Result<Vec<WitnessFailure>, BratteliError> {
    check_shape(d, e, w)?;
    let sides = [d, e];
    let vs = w.vertices();
    let mut out = Vec::new();
    for t in 0..vs.len() - 1 {
        let (src, tgt) = (sides[vs[t].0].level(vs[t].1)?, sides[vs[t + 1].0].level(vs[t + 1].1)?);
        if MultiplicityMorphism::new(src, tgt, w.arrow(t).clone()).is_err() {
            out.push(WitnessFailure::NotAdmissible { arrow: t });
        }
    }
    for t in 0..vs.len().saturating_sub(2) {
        let composite = w.arrow(t + 1).mul(w.arrow(t))?;
        let (side, from) = vs[t];
        let path = sides[side].path_product(from, vs[t + 2].1)?.matrix().clone();
        if composite != path {
            out.push(WitnessFailure::Triangle { arrow: t, composite, path });
        }
    }
    if w.segments() == 0
        && (w.d_indices[0] != 0 || w.e_indices[0] != 0 || d.level(0)? != e.level(0)? || w.down[0] != IntMatrix::identity(d.level(0)?.len()))
    {
        out.push(WitnessFailure::Degenerate);
    }
    Ok(out)
}

/// Whether every triangle of the witness commutes exactly and every arrow
/// is admissible.
pub fn check_intertwining(d: &BratteliDiagram, e: &BratteliDiagram, w: &IntertwiningWitness) -> Result<bool, BratteliError> {
    Ok(witness_failures(d, e, w)?.is_empty())
}

/// Limits for [`find_intertwining`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBounds {
    /// Number of commuting triangles required.
    pub depth: usize,
    /// Only levels `0..level_bound` of either diagram are used.
    pub level_bound: usize,
    /// Largest matrix entry tried.
    pub entry_bound: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            depth: 3,
            level_bound: 8,
            entry_bound: 16,
        }
    }
}

/// Levels and path products of one diagram, up to a bound.
struct Tables {
    levels: Vec<Vec<u64>>,
    /// `paths[a][b]` for `a < b`; `None` on overflow.
    paths: Vec<Vec<Option<IntMatrix>>>,
}

impl Tables {
    fn new(d: &BratteliDiagram, bound: usize) -> Tables {
        let levels: Vec<Vec<u64>> = (0..bound)
            .map_while(|i| d.level(i).ok().map(|l| l.sizes().to_vec()))
            .collect();
        let n = levels.len();
        let mut paths = vec![vec![None; n]; n];
        for a in 0..n {
            let mut acc = Some(IntMatrix::identity(levels[a].len()));
            for b in a + 1..n {
                acc = acc.and_then(|p| d.step_matrix(b - 1).ok()?.mul(&p).ok());
                paths[a][b] = acc.clone();
            }
        }
        Tables { levels, paths }
    }
}

/// Rows `x` of an arrow into a summand of size `cap` from a level with
/// sizes `src`, in lexicographic order: entries at most `entry_bound`,
/// `x · src ≤ cap`, and, when `required` is given, `x · prev = required`
/// where `prev` is the previous arrow.
fn candidate_rows(src: &[u64], cap: u64, entry_bound: u64, prev_and_required: Option<(&IntMatrix, &[u64])>) -> Vec<Vec<u64>> {
    struct Ctx<'a> {
        src: &'a [u64],
        entry_bound: u64,
        prev: Option<(&'a IntMatrix, &'a [u64])>,
        out: Vec<Vec<u64>>,
    }
    fn go(ctx: &mut Ctx, c: usize, left: u64, partial: &mut Vec<u64>, cur: &mut Vec<u64>) {
        if c == ctx.src.len() {
            if ctx.prev.is_none_or(|(_, req)| partial.as_slice() == req) {
                ctx.out.push(cur.clone());
            }
            return;
        }
        let top = ctx.entry_bound.min(left / ctx.src[c]);
        for x in 0..=top {
            let mut ok = true;
            if let Some((prev, req)) = ctx.prev {
                for (k, p) in partial.iter_mut().enumerate() {
                    *p += x * prev.get(c, k);
                    ok &= *p <= req[k];
                }
            }
            if ok {
                cur.push(x);
                go(ctx, c + 1, left - x * ctx.src[c], partial, cur);
                cur.pop();
            }
            if let Some((prev, _)) = ctx.prev {
                for (k, p) in partial.iter_mut().enumerate() {
                    *p -= x * prev.get(c, k);
                }
            }
            if !ok {
                break;
            }
        }
    }
    let width = prev_and_required.map_or(0, |(_, req)| req.len());
    let mut ctx = Ctx {
        src,
        entry_bound,
        prev: prev_and_required,
        out: Vec::new(),
    };
    go(&mut ctx, 0, cap, &mut vec![0; width], &mut Vec::new());
    ctx.out
}

struct Search {
    sides: [Tables; 2],
    entry_bound: u64,
    arrows_needed: usize,
    vertices: Vec<usize>,
    arrows: Vec<IntMatrix>,
}

impl Search {
    /// Extends the zig-zag by arrow `t = arrows.len()`, trying target
    /// levels in increasing order and matrices in row-major lexicographic
    /// order.
    fn dfs(&mut self) -> bool {
        let t = self.arrows.len();
        if t == self.arrows_needed {
            return true;
        }
        let (from_side, to_side) = (t % 2, 1 - t % 2);
        let lo = if t >= 1 { self.vertices[t - 1] + 1 } else { 0 };
        for next in lo..self.sides[to_side].levels.len() {
            let required = if t >= 1 {
                match &self.sides[to_side].paths[self.vertices[t - 1]][next] {
                    Some(p) => Some(p.clone()),
                    None => continue,
                }
            } else {
                None
            };
            let src = self.sides[from_side].levels[self.vertices[t]].clone();
            let tgt = self.sides[to_side].levels[next].clone();
            let prev = self.arrows.last().cloned();
            let per_row: Vec<Vec<Vec<u64>>> = (0..tgt.len())
                .map(|r| {
                    let pr = prev.as_ref().zip(required.as_ref()).map(|(p, q)| (p, q.row(r)));
                    candidate_rows(&src, tgt[r], self.entry_bound, pr)
                })
                .collect();
            if per_row.iter().any(Vec::is_empty) {
                continue;
            }
            self.vertices.push(next);
            for rows in per_row.into_iter().map(Vec::into_iter).multi_cartesian_product() {
                self.arrows.push(IntMatrix::from_rows(&rows).expect("rectangular"));
                if self.dfs() {
                    return true;
                }
                self.arrows.pop();
            }
            self.vertices.pop();
        }
        false
    }
}

/// The lexicographically first zig-zag with `bounds.depth` commuting
/// triangles, ordered by `(i₀, j₀, R₀, i₁, S₀, j₁, R₁, ..)` with matrices
/// compared row-major. `None` when the bounded search space is exhausted.
/// Depth 0 yields the conventional identity witness when both diagrams
/// start at the same level.
pub fn find_intertwining(d: &BratteliDiagram, e: &BratteliDiagram, bounds: SearchBounds) -> Option<IntertwiningWitness> {
    if bounds.depth == 0 {
        let (a, b) = (d.level(0).ok()?, e.level(0).ok()?);
        return (a == b).then(|| IntertwiningWitness {
            d_indices: vec![0],
            e_indices: vec![0],
            down: vec![IntMatrix::identity(a.len())],
            up: Vec::new(),
        });
    }
    let mut search = Search {
        sides: [Tables::new(d, bounds.level_bound), Tables::new(e, bounds.level_bound)],
        entry_bound: bounds.entry_bound,
        arrows_needed: bounds.depth + 1,
        vertices: Vec::new(),
        arrows: Vec::new(),
    };
    for i0 in 0..search.sides[0].levels.len() {
        search.vertices.push(i0);
        if search.dfs() {
            return Some(IntertwiningWitness::from_zigzag(&search.vertices, &search.arrows));
        }
        search.vertices.pop();
    }
    None
}
