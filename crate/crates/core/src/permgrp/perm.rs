use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A bijection of `{0, .., n-1}`, stored as its image array.
///
/// Points are 0-based internally. Cycle notation (parsing and display) is
/// 1-based, so `(123)` on degree 3 is the image array `[1, 2, 0]`.
///
/// Products are diagrammatic: `p.then(&q)` applies `p` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = 255;

    pub fn identity(degree: usize) -> Self {
        assert!(degree <= Self::MAX_DEGREE, "degree {degree} too large");
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from a 0-based image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        if n > Self::MAX_DEGREE {
            return Err(GroupError::NotAPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(GroupError::NotAPermutation(format!("{images:?}")));
            }
            seen[y] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|y| y as u8).collect(),
        })
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                if point == 0 || point > degree || touched[point - 1] {
                    return Err(GroupError::Parse(format!(
                        "bad point {point} in cycle {cycle:?} on degree {degree}"
                    )));
                }
                touched[point - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[point - 1] = next - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(123)(456)` or `(1 2 3)(6 7 8 9 10)`.
    ///
    /// Inside a cycle, points are separated by whitespace or commas; a cycle
    /// without separators is read one digit per point. `()` and the empty
    /// string denote the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            if rest_trim.is_empty() {
                break;
            }
            if !rest_trim.starts_with('(') {
                return Err(GroupError::Parse(format!("expected '(' in {text:?}")));
            }
            let close = rest_trim
                .find(')')
                .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = rest_trim[1..close].trim();
            rest = &rest_trim[close + 1..];
            if body.is_empty() {
                continue;
            }
            let points: Vec<usize> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| GroupError::Parse(format!("bad point {s:?} in {text:?}")))
                    })
                    .collect::<Result<_, _>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| GroupError::Parse(format!("bad point {c:?} in {text:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            cycles.push(points);
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Permutation { images }
    }

    /// `h⁻¹ · self · h`, which relabels every cycle `(a b ..)` of `self` as
    /// `(h(a) h(b) ..)`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[h.images[x] as usize] = h.images[y as usize];
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Lengths of the nontrivial cycles, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycle_type()
            .into_iter()
            .fold(1, num_integer::lcm)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Points moved by `self`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.apply(x) != x).collect()
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend((self.degree()..degree).map(|i| i as u8));
        Permutation { images }
    }

    /// Acts on `{offset, .., offset + self.degree() - 1}` inside `degree` points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u8> = (0..degree).map(|i| i as u8).collect();
        for (x, &y) in self.images.iter().enumerate() {
            images[offset + x] = (offset + y as usize) as u8;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        let spaced = self.degree() > 9;
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if spaced && i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = GroupError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p(3, "(123)").images(), vec![1, 2, 0]);
        assert_eq!(p(6, "(123)(456)").to_string(), "(123)(456)");
        assert_eq!(p(10, "(6 7 8 9 10)").to_string(), "(6 7 8 9 10)");
        assert_eq!(p(4, "()").to_string(), "()");
        assert_eq!(p(4, "").to_string(), "()");
        assert_eq!(p(5, "(3,1)").to_string(), "(13)");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles(3, "(124)").is_err());
        assert!(Permutation::parse_cycles(3, "(121)").is_err());
        assert!(Permutation::parse_cycles(3, "(12").is_err());
        assert!(Permutation::parse_cycles(3, "12").is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn diagrammatic_product() {
        // (12) then (23): 1 -> 2 -> 3, 3 -> 2, 2 -> 1 -> 1.
        let x = p(3, "(12)").then(&p(3, "(23)"));
        assert_eq!(x, p(3, "(132)"));
        let c = p(5, "(12345)");
        assert!(c.then(&c.inverse()).is_identity());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let h = p(6, "(14)(25)(36)");
        assert_eq!(p(6, "(123)").conjugate_by(&h), p(6, "(456)"));
        let y = p(6, "(1234)");
        assert_eq!(y.conjugate_by(&h), h.inverse().then(&y).then(&h));
    }

    #[test]
    fn order_parity_cycle_type() {
        let x = p(7, "(123)(45)");
        assert_eq!(x.order(), 6);
        assert!(!x.is_even());
        assert_eq!(x.cycle_type(), vec![3, 2]);
        assert!(p(6, "(123)(456)").is_even());
    }

    #[test]
    fn serde_as_image_array() {
        let x = p(3, "(123)");
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,2,0]");
        let back: Permutation = serde_json::from_str("[1,2,0]").unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Permutation>("[1,1,0]").is_err());
    }
}
