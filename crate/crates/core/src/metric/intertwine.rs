use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use super::{dyadic, MetricCategory, MetricError};

/// Finds `h ∈ inner(x)` with `d(u then h, v) ≤ ε`.
pub trait CorrectorOracle<C: MetricCategory> {
    fn correct(
        &self,
        cat: &C,
        x: &C::Object,
        u: &C::Morphism,
        v: &C::Morphism,
        epsilon: &BigRational,
    ) -> Result<Option<C::Morphism>, MetricError>;
}

/// Scans all of `inner(x)` and returns the first `h` (in inner order)
/// minimizing `d(u then h, v)`, if that minimum is within `ε`. Exact
/// whenever an exact correction exists.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExhaustiveCorrector;

impl<C: MetricCategory> CorrectorOracle<C> for ExhaustiveCorrector {
    fn correct(
        &self,
        cat: &C,
        x: &C::Object,
        u: &C::Morphism,
        v: &C::Morphism,
        epsilon: &BigRational,
    ) -> Result<Option<C::Morphism>, MetricError> {
        let mut best: Option<(BigRational, C::Morphism)> = None;
        for h in cat.inner(x)? {
            let d = cat.distance(&cat.compose(u, &h)?, v);
            if best.as_ref().map_or(true, |(b, _)| d < *b) {
                let exact = d.is_zero();
                best = Some((d, h));
                if exact {
                    break;
                }
            }
        }
        Ok(best.filter(|(d, _)| d <= epsilon).map(|(_, h)| h))
    }
}

/// Returns the first `h` in inner order that is within `ε`, without
/// looking for a better one.
#[derive(Clone, Copy, Debug, Default)]
pub struct FirstWithinTolerance;

impl<C: MetricCategory> CorrectorOracle<C> for FirstWithinTolerance {
    fn correct(
        &self,
        cat: &C,
        x: &C::Object,
        u: &C::Morphism,
        v: &C::Morphism,
        epsilon: &BigRational,
    ) -> Result<Option<C::Morphism>, MetricError> {
        for h in cat.inner(x)? {
            if cat.distance(&cat.compose(u, &h)?, v) <= *epsilon {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }
}

/// How the tolerances `ε_1, ε_2, ..` are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpsilonSchedule {
    /// Start step `k` at `2^{-k}` and halve until the continuity bounds
    /// that make the iterates Cauchy hold (reaching `0` after 64 halvings):
    /// after correcting `g_n`,
    /// `d((f_n g_n) f', f') ≤ 2^{-(2n-1)}` for the next `f'` and
    /// `d(g_{n-1} (f_n g_n), g_{n-1}) ≤ 2^{-(2n-2)}`;
    /// after correcting `f_{n+1}`,
    /// `d(f_n (g_n f_{n+1}), f_n) ≤ 2^{-(2n-1)}` and
    /// `d((g_n f_{n+1}) g', g') ≤ 2^{-2n}` for the next `g'`.
    Adaptive,
    /// `ε_k = 2^{-k}`, no further adjustment.
    Geometric,
    /// Explicit values for `ε_1, ε_2, ..`; steps past the end use `0`.
    Explicit(Vec<BigRational>),
}

/// Data of one lifting problem: `f_1: a → b`, `g_1: b → a` whose classes
/// are mutually inverse.
#[derive(Clone, Debug)]
pub struct IntertwiningProblem<C: MetricCategory> {
    pub a: C::Object,
    pub b: C::Object,
    pub f1: C::Morphism,
    pub g1: C::Morphism,
    pub schedule: EpsilonSchedule,
    /// Maximum number of rounds `n` (each round corrects `g_n` then `f_{n+1}`).
    pub max_rounds: usize,
}

impl<C: MetricCategory> IntertwiningProblem<C> {
    pub fn new(a: C::Object, b: C::Object, f1: C::Morphism, g1: C::Morphism) -> Self {
        IntertwiningProblem {
            a,
            b,
            f1,
            g1,
            schedule: EpsilonSchedule::Adaptive,
            max_rounds: 64,
        }
    }
}

/// One correction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    /// `k` in `ε_k`: odd steps correct `g_n`, even steps `f_{n+1}`.
    pub step: usize,
    pub corrected: String,
    pub epsilon: String,
    pub halvings: u32,
    pub inner: String,
    /// `d(f_n g_n, id_a)` or `d(g_n f_{n+1}, id_b)` after the correction.
    pub residual: String,
}

/// `d(x_{n+1}, x_n)` against its bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyBound {
    pub n: usize,
    pub distance: String,
    pub bound: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct IntertwiningResult<M> {
    pub f: M,
    pub g: M,
    /// `f_1, f_2, ..` as corrected.
    pub f_iterates: Vec<M>,
    /// `g_1, g_2, ..` as corrected.
    pub g_iterates: Vec<M>,
    pub steps: Vec<StepRecord>,
    /// `d(f_{n+1}, f_n) ≤ 2^{-2n+2}`.
    pub f_bounds: Vec<CauchyBound>,
    /// `d(g_{n+1}, g_n) ≤ 2^{-2n+1}`.
    pub g_bounds: Vec<CauchyBound>,
}

impl<M> IntertwiningResult<M> {
    pub fn cauchy_bounds_hold(&self) -> bool {
        self.f_bounds.iter().chain(&self.g_bounds).all(|b| b.holds)
    }
}

/// Why the loop stopped without an exact pair.
#[derive(Clone, Debug)]
pub struct IntertwiningFailure<M> {
    pub reason: String,
    pub f: M,
    pub g: M,
    pub residual_a: BigRational,
    pub residual_b: BigRational,
    pub steps: Vec<StepRecord>,
}

#[derive(Clone, Debug, Error)]
pub enum IntertwineError<M: std::fmt::Debug> {
    #[error("classes are not mutually inverse: f then g in inner(a) is {f_then_g_inner}, g then f in inner(b) is {g_then_f_inner}")]
    Precondition {
        f_then_g_inner: bool,
        g_then_f_inner: bool,
    },
    #[error("no exact pair: {}", .0.reason)]
    NotConverged(Box<IntertwiningFailure<M>>),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

fn step_epsilon(schedule: &EpsilonSchedule, k: usize) -> BigRational {
    match schedule {
        EpsilonSchedule::Adaptive | EpsilonSchedule::Geometric => dyadic(k),
        EpsilonSchedule::Explicit(list) => list.get(k - 1).cloned().unwrap_or_else(BigRational::zero),
    }
}

const MAX_HALVINGS: u32 = 64;

/// Runs the alternating correction loop. Each round `n` first replaces
/// `g_n` by `g_n h` so that `f_n g_n` is within `ε_{2n-1}` of `id_a`, then
/// replaces `f_{n+1}` (starting from `f_1`) by `f_{n+1} k` so that
/// `g_n f_{n+1}` is within `ε_{2n}` of `id_b`. The next `g_{n+1}` starts
/// from `g_1`. Stops once both residuals are `0`, which forces
/// `f_{n+1} = f_n` and makes `(f_n, g_n)` mutually inverse.
pub fn approximate_intertwine<C, O>(
    cat: &C,
    problem: &IntertwiningProblem<C>,
    oracle: &O,
) -> Result<IntertwiningResult<C::Morphism>, IntertwineError<C::Morphism>>
where
    C: MetricCategory,
    O: CorrectorOracle<C>,
{
    let IntertwiningProblem { a, b, f1, g1, schedule, max_rounds } = problem;
    let id_a = cat.identity(a)?;
    let id_b = cat.identity(b)?;
    let inner_a = cat.inner(a)?;
    let inner_b = cat.inner(b)?;
    let fg = cat.compose(f1, g1)?;
    let gf = cat.compose(g1, f1)?;
    let f_then_g_inner = inner_a.contains(&fg);
    let g_then_f_inner = inner_b.contains(&gf);
    if !f_then_g_inner || !g_then_f_inner {
        return Err(IntertwineError::Precondition {
            f_then_g_inner,
            g_then_f_inner,
        });
    }

    let mut f_iter = vec![f1.clone()];
    let mut g_iter: Vec<C::Morphism> = Vec::new();
    let mut steps = Vec::new();
    let adaptive = *schedule == EpsilonSchedule::Adaptive;
    let mut residual_a = BigRational::one();
    let mut residual_b = BigRational::one();

    for n in 1..=*max_rounds {
        let f_n = f_iter[n - 1].clone();

        // odd step 2n-1: correct g_n, starting from g_1
        let k = 2 * n - 1;
        let u = cat.compose(&f_n, g1)?;
        let mut eps = step_epsilon(schedule, k);
        let mut halvings = 0;
        let (h, g_n) = loop {
            let candidate = match oracle.correct(cat, a, &u, &id_a, &eps)? {
                Some(h) => {
                    let g_n = cat.compose(g1, &h)?;
                    let ok = !adaptive || {
                        let fg = cat.compose(&f_n, &g_n)?;
                        let first = cat.distance(&cat.compose(&fg, f1)?, f1) <= dyadic(2 * n - 1);
                        let second = match g_iter.last() {
                            Some(g_prev) => {
                                cat.distance(&cat.compose(g_prev, &fg)?, g_prev) <= dyadic(2 * n - 2)
                            }
                            None => true,
                        };
                        first && second
                    };
                    ok.then_some((h, g_n))
                }
                None => None,
            };
            if let Some(found) = candidate {
                break found;
            }
            if !adaptive || eps.is_zero() {
                return Err(not_converged(
                    cat,
                    format!("no inner automorphism of a within {eps} at step {k}"),
                    f_n,
                    g_iter.last().cloned().unwrap_or_else(|| g1.clone()),
                    residual_a,
                    residual_b,
                    steps,
                ));
            }
            halvings += 1;
            eps = if halvings >= MAX_HALVINGS { BigRational::zero() } else { eps / BigInt::from(2) };
        };
        residual_a = cat.distance(&cat.compose(&f_n, &g_n)?, &id_a);
        steps.push(StepRecord {
            step: k,
            corrected: format!("g_{n}"),
            epsilon: eps.to_string(),
            halvings,
            inner: cat.describe(&h),
            residual: residual_a.to_string(),
        });
        g_iter.push(g_n.clone());

        // even step 2n: correct f_{n+1}, starting from f_1
        let k = 2 * n;
        let u = cat.compose(&g_n, f1)?;
        let mut eps = step_epsilon(schedule, k);
        let mut halvings = 0;
        let (kk, f_next) = loop {
            let candidate = match oracle.correct(cat, b, &u, &id_b, &eps)? {
                Some(kk) => {
                    let f_next = cat.compose(f1, &kk)?;
                    let ok = !adaptive || {
                        let gf = cat.compose(&g_n, &f_next)?;
                        let first = cat.distance(&cat.compose(&f_n, &gf)?, &f_n) <= dyadic(2 * n - 1);
                        let second = cat.distance(&cat.compose(&gf, g1)?, g1) <= dyadic(2 * n);
                        first && second
                    };
                    ok.then_some((kk, f_next))
                }
                None => None,
            };
            if let Some(found) = candidate {
                break found;
            }
            if !adaptive || eps.is_zero() {
                return Err(not_converged(
                    cat,
                    format!("no inner automorphism of b within {eps} at step {k}"),
                    f_n,
                    g_n,
                    residual_a,
                    residual_b,
                    steps,
                ));
            }
            halvings += 1;
            eps = if halvings >= MAX_HALVINGS { BigRational::zero() } else { eps / BigInt::from(2) };
        };
        residual_b = cat.distance(&cat.compose(&g_n, &f_next)?, &id_b);
        steps.push(StepRecord {
            step: k,
            corrected: format!("f_{}", n + 1),
            epsilon: eps.to_string(),
            halvings,
            inner: cat.describe(&kk),
            residual: residual_b.to_string(),
        });
        f_iter.push(f_next.clone());

        if residual_a.is_zero() && residual_b.is_zero() {
            debug_assert_eq!(f_next, f_n);
            let (f_bounds, g_bounds) = cauchy_bounds(cat, &f_iter, &g_iter);
            return Ok(IntertwiningResult {
                f: f_n,
                g: g_n,
                f_iterates: f_iter,
                g_iterates: g_iter,
                steps,
                f_bounds,
                g_bounds,
            });
        }
    }
    let f_last = f_iter.last().cloned().unwrap_or_else(|| f1.clone());
    let g_last = g_iter.last().cloned().unwrap_or_else(|| g1.clone());
    Err(not_converged(
        cat,
        format!("no exact pair after {max_rounds} rounds"),
        f_last,
        g_last,
        residual_a,
        residual_b,
        steps,
    ))
}

fn not_converged<C: MetricCategory>(
    _cat: &C,
    reason: String,
    f: C::Morphism,
    g: C::Morphism,
    residual_a: BigRational,
    residual_b: BigRational,
    steps: Vec<StepRecord>,
) -> IntertwineError<C::Morphism> {
    IntertwineError::NotConverged(Box::new(IntertwiningFailure {
        reason,
        f,
        g,
        residual_a,
        residual_b,
        steps,
    }))
}

fn cauchy_bounds<C: MetricCategory>(
    cat: &C,
    f_iter: &[C::Morphism],
    g_iter: &[C::Morphism],
) -> (Vec<CauchyBound>, Vec<CauchyBound>) {
    let bound = |n: usize, d: BigRational, b: BigRational| CauchyBound {
        n,
        holds: d <= b,
        distance: d.to_string(),
        bound: b.to_string(),
    };
    // 2^{-2n+2} and 2^{-2n+1}, written as 4·2^{-2n} and 2·2^{-2n}
    let f_bounds = f_iter
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let n = i + 1;
            bound(n, cat.distance(&w[1], &w[0]), dyadic(2 * n) * BigInt::from(4))
        })
        .collect();
    let g_bounds = g_iter
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let n = i + 1;
            bound(n, cat.distance(&w[1], &w[0]), dyadic(2 * n) * BigInt::from(2))
        })
        .collect();
    (f_bounds, g_bounds)
}
