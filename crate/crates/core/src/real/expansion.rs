//! Greedy block expansion of reals and the maximal-sum identity.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Real, RealError, RealSeq};
use crate::coeff::CoeffFn;
use crate::collections::MaximalFamily;

/// Stopping rule for [`expand_real`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopRule {
    pub max_blocks: usize,
    /// Stop once the residual is at most this.
    pub residual_tol: BigRational,
    /// Cap on digit positions visited inside one block.
    pub walk_limit: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule { max_blocks: 8, residual_tol: Real::ten_to_minus(30).value().clone(), walk_limit: 1_000_000 }
    }
}

/// A nonzero block: it follows `β̄^start` up to `end`, where it takes a
/// smaller digit (possibly zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealBlock {
    pub start: u64,
    pub end: u64,
    pub digits: CoeffFn,
    pub value: Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ExactZero,
    ResidualTolerance,
    MaxBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub blocks: Vec<RealBlock>,
    pub residual: Real,
    pub stop: StopReason,
}

impl Expansion {
    /// All digits of all blocks as one coefficient function.
    pub fn coefficients(&self) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for b in &self.blocks {
            out = out.union(&b.digits).expect("blocks have disjoint supports");
        }
        out
    }
}

/// Expands `x ∈ (0, 1)` greedily in blocks.
///
/// Each block starts at the `n` with `Q_n ≤ x < Q_{n−1}`, takes the digits
/// of `β̄^n` while the running sum stays at most `x`, and closes at the
/// first index where the full digit would overshoot, with the largest digit
/// that still fits. Only nonzero blocks are returned; the zero blocks between
/// them are implicit.
pub fn expand_real(x: &Real, q: &RealSeq, fam: &MaximalFamily, stop: &StopRule) -> Result<Expansion, RealError> {
    if !x.is_positive() || *x >= Real::one() {
        return Err(RealError::Domain(x.to_string()));
    }
    let tol = Real::exact(stop.residual_tol.clone());
    let mut rem = x.clone();
    let mut blocks: Vec<RealBlock> = Vec::new();
    loop {
        if rem.is_zero() {
            return Ok(Expansion { blocks, residual: rem, stop: StopReason::ExactZero });
        }
        if rem <= tol {
            return Ok(Expansion { blocks, residual: rem, stop: StopReason::ResidualTolerance });
        }
        if blocks.len() >= stop.max_blocks {
            return Ok(Expansion { blocks, residual: rem, stop: StopReason::MaxBlocks });
        }
        let n = q.locate(&rem)?;
        if blocks.last().is_some_and(|b| n <= b.end) {
            return Err(RealError::Integrity { index: n });
        }
        let block = greedy_block(&rem, n, q, fam, stop.walk_limit)?;
        rem = rem.sub(&block.value);
        blocks.push(block);
    }
}

fn greedy_block(rem: &Real, n: u64, q: &RealSeq, fam: &MaximalFamily, walk_limit: u64) -> Result<RealBlock, RealError> {
    let ceiling = q.term(n - 1);
    let mut acc = Real::zero();
    let mut terms: Vec<(u64, u64)> = Vec::new();
    let mut j = n;
    for _ in 0..walk_limit {
        let d = fam.digit(n, j)?;
        let qj = q.term(j);
        let candidate = acc.add(&qj.mul_u64(d));
        if candidate <= *rem {
            acc = candidate;
            terms.push((j, d));
            if acc >= ceiling {
                return Err(RealError::Integrity { index: n });
            }
            j = fam.next_support(n, j + 1)?;
        } else {
            let c = rem.sub(&acc).floor_div(&qj);
            let c = c.to_u64().filter(|&c| c < d).expect("an overshooting digit bounds the affordable one");
            if c > 0 {
                acc = acc.add(&qj.mul_u64(c));
                terms.push((j, c));
            }
            let digits = CoeffFn::from_pairs(terms).expect("strictly increasing indices");
            return Ok(RealBlock { start: n, end: j, digits, value: acc });
        }
    }
    Err(RealError::WalkLimit { index: n, limit: walk_limit })
}

/// `Σ ε_k Q_k` over the finite support of `eps`.
pub fn eval_expansion(eps: &CoeffFn, q: &RealSeq) -> Real {
    eps.iter().fold(Real::zero(), |acc, (k, d)| acc.add(&q.term(k).mul_u64(d)))
}

/// How [`verify_maximal_identity`] accounts for digits beyond the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailModel {
    /// Bound the tail by `D · Q_{H+1} / (1 − r)` with `D` the family's
    /// digit bound and `r` the largest ratio `Q_{k+1}/Q_k` seen up to `H`.
    RatioEstimate,
    /// Sum the tail in closed form, using the family's declared period `P`
    /// and `Q_{k+P} = c Q_k` on the periodic part. The horizon is unused.
    Periodic,
    /// The tail of `β̄^n` from its next support index `m > H` is `β̄^m`,
    /// whose sum is `Q_{m−1}`.
    SelfSimilar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityStatus {
    Holds,
    Fails,
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub status: IdentityStatus,
    /// Directly summed part.
    pub partial: Real,
    /// Closed-form tail, or the tail bound for [`TailModel::RatioEstimate`].
    pub tail: Real,
    /// `Q_{n−1}`.
    pub target: Real,
    /// `|partial + tail − target|`, or `|partial − target|` for the ratio
    /// estimate.
    pub discrepancy: Real,
}

/// Checks `Σ β̄^n Q = Q_{n−1}` to within `tol`.
pub fn verify_maximal_identity(
    q: &RealSeq,
    fam: &MaximalFamily,
    n: u64,
    horizon: u64,
    tol: &Real,
    model: TailModel,
) -> Result<IdentityReport, RealError> {
    let target = q.term(n - 1);
    let inconclusive = |why: &str, partial: Real| IdentityReport {
        status: IdentityStatus::Inconclusive(why.to_string()),
        discrepancy: partial.sub(&target).abs(),
        partial,
        tail: Real::zero(),
        target: target.clone(),
    };
    match model {
        TailModel::RatioEstimate => {
            let partial = eval_expansion(&fam.truncated(n, horizon)?, q);
            let Some(bound) = fam.digit_bound() else {
                return Ok(inconclusive("family declares no digit bound", partial));
            };
            let mut r = Real::zero();
            for k in 1..horizon.max(2) {
                // Ratios of rounded terms are noise once fewer than half the
                // working digits are significant.
                let next = q.term(k + 1);
                if next.scale().is_some_and(|s| next < Real::ten_to_minus(s / 2)) {
                    break;
                }
                let ratio = q.term(k + 1).div(&q.term(k));
                if ratio > r {
                    r = ratio;
                }
            }
            if r >= Real::one() {
                return Ok(inconclusive("ratio estimate is not below 1", partial));
            }
            let tail = q.term(horizon + 1).mul_u64(bound).div(&Real::one().sub(&r));
            let discrepancy = partial.sub(&target).abs();
            let holds = discrepancy <= tol.add(&tail);
            Ok(report(holds, partial, tail, target, discrepancy))
        }
        TailModel::Periodic => {
            let Some((start, period)) = fam.periodic_from(n) else {
                return Ok(inconclusive("family declares no period", Real::zero()));
            };
            let partial = if start > n { eval_expansion(&fam.truncated(n, start - 1)?, q) } else { Real::zero() };
            let c = q.term(start + period).div(&q.term(start));
            for k in start..start + 2 * period {
                if q.term(k + period).sub(&c.mul(&q.term(k))).abs() > *tol {
                    return Ok(inconclusive("sequence is not geometric along the period", partial));
                }
            }
            if c >= Real::one() {
                return Ok(inconclusive("period ratio is not below 1", partial));
            }
            let mut block = Real::zero();
            for k in start..start + period {
                block = block.add(&q.term(k).mul_u64(fam.digit(n, k)?));
            }
            let tail = block.div(&Real::one().sub(&c));
            let discrepancy = partial.add(&tail).sub(&target).abs();
            Ok(report(discrepancy <= *tol, partial, tail, target, discrepancy))
        }
        TailModel::SelfSimilar => {
            let partial = eval_expansion(&fam.truncated(n, horizon)?, q);
            let m = fam.next_support(n, horizon.max(n) + 1)?;
            let tail = q.term(m - 1);
            let discrepancy = partial.add(&tail).sub(&target).abs();
            Ok(report(discrepancy <= *tol, partial, tail, target, discrepancy))
        }
    }
}

fn report(holds: bool, partial: Real, tail: Real, target: Real, discrepancy: Real) -> IdentityReport {
    let status = if holds { IdentityStatus::Holds } else { IdentityStatus::Fails };
    IdentityReport { status, partial, tail, target, discrepancy }
}

/// `true` when adding one unit at the block's closing index would overshoot
/// `rem`, the value the block was cut from.
pub fn is_greedy_maximal(block: &RealBlock, rem: &Real, q: &RealSeq) -> bool {
    block.value <= *rem && block.value.add(&q.term(block.end)) > *rem
}
