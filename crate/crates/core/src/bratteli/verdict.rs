use serde::{Deserialize, Serialize};

use super::{check_intertwining, find_intertwining, BratteliDiagram, IntertwiningWitness, SearchBounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

/// For two diagrams with one summand per level and a 1×1 stationary tail
/// `[a]`, `[b]`: `prime` divides one multiplier and not the other. On the
/// `divisible` side every element of the limit group is divisible by every
/// power of `prime`; on the other side the unit at level 0 is not, because
/// all steps are nonzero and the prime stops dividing the path products
/// once the tail starts. The limit groups therefore differ, and so do the
/// diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisibilityCertificate {
    pub prime: u64,
    pub divisible: Side,
    pub first_multiplier: u64,
    pub second_multiplier: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Equivalent { witness: IntertwiningWitness },
    Distinct { certificate: DivisibilityCertificate },
    Unknown { bounds: SearchBounds },
}

/// The stationary multiplier, when every level has one summand, every
/// explicit step is nonzero and the tail is a nonzero 1×1 matrix.
fn scalar_multiplier(d: &BratteliDiagram) -> Option<u64> {
    let a = d.stationary_matrix()?;
    let single = d.levels().iter().all(|l| l.len() == 1) && a.rows() == 1;
    let nonzero = d.steps().iter().all(|s| !s.is_zero()) && a.get(0, 0) != 0;
    (single && nonzero).then(|| a.get(0, 0))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The smallest prime dividing exactly one of the two stationary
/// multipliers, when both diagrams are of the one-summand stationary kind.
pub fn divisibility_certificate(d: &BratteliDiagram, e: &BratteliDiagram) -> Option<DivisibilityCertificate> {
    let (a, b) = (scalar_multiplier(d)?, scalar_multiplier(e)?);
    let (pa, pb) = (prime_factors(a), prime_factors(b));
    let mut candidates: Vec<(u64, Side)> = pa
        .iter()
        .filter(|p| !pb.contains(p))
        .map(|&p| (p, Side::First))
        .chain(pb.iter().filter(|p| !pa.contains(p)).map(|&p| (p, Side::Second)))
        .collect();
    candidates.sort_unstable();
    candidates.first().map(|&(prime, divisible)| DivisibilityCertificate {
        prime,
        divisible,
        first_multiplier: a,
        second_multiplier: b,
    })
}

/// Re-derives the certificate's claim from explicit path products: the
/// prime is prime, both diagrams are one-summand with nonzero steps and the
/// recorded tails, the divisible side's tail steps are multiples of the
/// prime, and the other side's tail steps are not.
pub fn check_certificate(d: &BratteliDiagram, e: &BratteliDiagram, c: &DivisibilityCertificate) -> bool {
    let p = c.prime;
    if p < 2 || (2..p).take_while(|q| q * q <= p).any(|q| p % q == 0) {
        return false;
    }
    let tail_entries = |g: &BratteliDiagram, multiplier: u64| -> Option<Vec<u64>> {
        let a = g.stationary_matrix()?;
        if a.rows() != 1 || a.get(0, 0) != multiplier {
            return None;
        }
        let start = g.truncation_len() - 1;
        // the whole truncation, then three single tail steps and their product
        let mut out = vec![g.path_product(0, start).ok()?.matrix().get(0, 0)];
        for t in 0..3 {
            out.push(g.path_product(start + t, start + t + 1).ok()?.matrix().get(0, 0));
        }
        out.push(g.path_product(start, start + 3).ok()?.matrix().get(0, 0));
        (g.levels().iter().all(|l| l.len() == 1) && out.iter().all(|&x| x != 0)).then_some(out)
    };
    let (Some(first), Some(second)) = (tail_entries(d, c.first_multiplier), tail_entries(e, c.second_multiplier))
    else {
        return false;
    };
    let (div, other) = match c.divisible {
        Side::First => (first, second),
        Side::Second => (second, first),
    };
    div[1..].iter().all(|x| x % p == 0) && other[1..].iter().all(|x| x % p != 0)
}

/// Tries the divisibility obstruction, then the bounded zig-zag search.
/// `Equivalent` means a witness with `bounds.depth` commuting triangles
/// exists and has been checked; `Distinct` carries a certificate that
/// [`check_certificate`] accepts. Neither test is complete.
pub fn equivalent(d: &BratteliDiagram, e: &BratteliDiagram, bounds: SearchBounds) -> Verdict {
    if let Some(certificate) = divisibility_certificate(d, e) {
        debug_assert!(check_certificate(d, e, &certificate));
        return Verdict::Distinct { certificate };
    }
    match find_intertwining(d, e, bounds) {
        Some(witness) => {
            debug_assert!(check_intertwining(d, e, &witness).unwrap_or(false));
            Verdict::Equivalent { witness }
        }
        None => Verdict::Unknown { bounds },
    }
}
