//! Uniqueness of representations for multiplicity-list collections.
//!
//! A sequence satisfying the recurrence of a multiplicity list of length
//! `N` represents every member uniquely as soon as the members of order at
//! most `4N` have distinct values. [`test_unique`] runs that finite check.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::coeff::CoeffFn;
use crate::collections::{AscendingIter, CollectionError};
use crate::integer::Collision;
use crate::recurrences::{family_from_l, MultiplicityList};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniqueError {
    #[error("need at least {needed} seed terms, got {got}")]
    TooFewSeeds { needed: usize, got: usize },
    #[error("seed term {index} is zero")]
    ZeroSeed { index: usize },
    #[error("term {index} is {term} but the recurrence gives {expected}")]
    RecurrenceViolated { index: usize, term: BigUint, expected: BigUint },
    #[error(transparent)]
    Collection(#[from] CollectionError),
}

/// Members of order at most a bound, in ascending order, zero excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LEnumeration {
    pub members: Vec<CoeffFn>,
}

impl LEnumeration {
    pub fn nonzero_count(&self) -> usize {
        self.members.len()
    }

    /// Count with the zero function included.
    pub fn with_zero_count(&self) -> usize {
        self.members.len() + 1
    }
}

/// Members of order at most `k`, by successor iteration from zero.
pub fn enumerate_l_upto_order(l: &MultiplicityList, k: u64) -> Result<LEnumeration, CollectionError> {
    let fam = family_from_l(l);
    let mut members = Vec::new();
    for mu in AscendingIter::new(&fam) {
        let mu = mu?;
        if mu.order_asc() > k {
            break;
        }
        members.push(mu);
    }
    Ok(LEnumeration { members })
}

/// One L-block: a proper block, or the maximal block at its top index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LBlock {
    /// First index of the block interval.
    pub start: u64,
    /// Top index.
    pub end: u64,
    /// Digits on `[start, end]`, lowest first.
    pub digits: Vec<u64>,
    pub maximal: bool,
}

/// All L-blocks whose interval starts at `start` and ends at or below `k`.
pub fn lblocks_at(l: &MultiplicityList, start: u64, k: u64) -> Vec<LBlock> {
    let n_len = l.len() as u64;
    let mut out = Vec::new();
    let top = k.min(start + n_len - 1);
    for end in start..=top {
        // digits of the predecessor of `end + 1` on [start, end]
        let pattern: Vec<u64> = (start..=end).map(|j| l.pattern_digit(end + 1 - j)).collect();
        for d in 0..pattern[0] {
            let mut digits = pattern.clone();
            digits[0] = d;
            out.push(LBlock { start, end, digits, maximal: false });
        }
        let maximal = if end > n_len { start == end - n_len + 1 } else { start == 1 };
        if maximal {
            out.push(LBlock { start, end, digits: pattern, maximal: true });
        }
    }
    out
}

/// Members of order at most `k`, zero included, built by tiling `[1, k]`
/// with L-blocks. Independent of the successor map.
pub fn enumerate_by_lblocks(l: &MultiplicityList, k: u64) -> Vec<CoeffFn> {
    let mut out = Vec::new();
    let mut dense = vec![0u64; k as usize];
    tile(l, 1, k, &mut dense, &mut out);
    out
}

fn tile(l: &MultiplicityList, start: u64, k: u64, dense: &mut Vec<u64>, out: &mut Vec<CoeffFn>) {
    if start > k {
        out.push(CoeffFn::from_digits(dense));
        return;
    }
    for block in lblocks_at(l, start, k) {
        for (i, &d) in block.digits.iter().enumerate() {
            dense[(block.start as usize - 1) + i] = d;
        }
        tile(l, block.end + 1, k, dense, out);
    }
    for i in start..=k {
        dense[i as usize - 1] = 0;
    }
}

/// Counts nonzero members of order at most `k` satisfying `pred`.
pub fn count_filtered<P>(l: &MultiplicityList, k: u64, pred: P) -> Result<usize, CollectionError>
where
    P: Fn(&CoeffFn) -> bool,
{
    let fam = family_from_l(l);
    let mut count = 0;
    for mu in AscendingIter::new(&fam) {
        let mu = mu?;
        if mu.order_asc() > k {
            break;
        }
        if pred(&mu) {
            count += 1;
        }
    }
    Ok(count)
}

/// Order bound for [`test_unique`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderBound {
    /// `4N`, the bound that suffices for every multiplicity list.
    #[default]
    FourN,
    /// `2N`, a shorter search whose justification lies outside this crate.
    TwoN,
    Exact(u64),
}

impl OrderBound {
    pub fn resolve(self, n: usize) -> u64 {
        match self {
            OrderBound::FourN => 4 * n as u64,
            OrderBound::TwoN => 2 * n as u64,
            OrderBound::Exact(k) => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniqueOutcome {
    /// All members of bounded order have distinct values.
    Pass {
        count: usize,
    },
    Collision(Collision),
}

/// Extends `seeds` by the recurrence of `l` to `k` terms. Seed terms past
/// the first `N` must already satisfy the recurrence.
pub fn extend_by_recurrence(l: &MultiplicityList, seeds: &[BigUint], k: usize) -> Result<Vec<BigUint>, UniqueError> {
    let n = l.len();
    if seeds.len() < n {
        return Err(UniqueError::TooFewSeeds { needed: n, got: seeds.len() });
    }
    if let Some(index) = seeds.iter().position(Zero::is_zero) {
        return Err(UniqueError::ZeroSeed { index: index + 1 });
    }
    let next =
        |q: &[BigUint], i: usize| -> BigUint { l.entries().iter().enumerate().map(|(j, &e)| &q[i - 1 - j] * e).sum() };
    let mut q: Vec<BigUint> = seeds[..n].to_vec();
    for (i, term) in seeds.iter().enumerate().skip(n) {
        let expected = next(&q, i);
        if *term != expected {
            return Err(UniqueError::RecurrenceViolated { index: i + 1, term: term.clone(), expected });
        }
        q.push(expected);
    }
    while q.len() < k {
        let t = next(&q, q.len());
        q.push(t);
    }
    Ok(q)
}

/// Checks that members of order at most `bound` have pairwise distinct
/// values against the sequence generated from `seeds`. On failure returns
/// the first collision met in ascending member order.
pub fn test_unique(l: &MultiplicityList, seeds: &[BigUint], bound: OrderBound) -> Result<UniqueOutcome, UniqueError> {
    let k = bound.resolve(l.len());
    let q = extend_by_recurrence(l, seeds, k as usize)?;
    let fam = family_from_l(l);
    let mut seen: HashMap<BigUint, CoeffFn> = HashMap::new();
    for mu in AscendingIter::new(&fam) {
        let mu = mu?;
        if mu.order_asc() > k {
            break;
        }
        let value: BigUint = mu.iter().map(|(i, d)| &q[i as usize - 1] * d).sum();
        if let Some(prev) = seen.get(&value) {
            return Ok(UniqueOutcome::Collision(Collision { first: prev.clone(), second: mu, value }));
        }
        seen.insert(value, mu);
    }
    Ok(UniqueOutcome::Pass { count: seen.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(e: &[u64]) -> MultiplicityList {
        MultiplicityList::new(e.to_vec()).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn fibonacci_small() {
        let e = enumerate_l_upto_order(&list(&[1, 1]), 2).unwrap();
        assert_eq!(e.nonzero_count(), 2);
        assert_eq!(e.with_zero_count(), 3);
    }

    #[test]
    fn tiling_matches_successor() {
        for l in [vec![1, 1], vec![2, 3], vec![2, 3, 2], vec![1, 0, 2], vec![3]] {
            let l = list(&l);
            let mut tiled = enumerate_by_lblocks(&l, 7);
            tiled.retain(|m| !m.is_zero());
            tiled.sort_by(|a, b| a.cmp_asc(b));
            assert_eq!(tiled, enumerate_l_upto_order(&l, 7).unwrap().members, "{l:?}");
        }
    }

    #[test]
    fn recurrence_is_checked() {
        let l = list(&[2, 3]);
        assert!(extend_by_recurrence(&l, &big(&[5, 3, 21]), 5).is_ok());
        assert!(matches!(
            extend_by_recurrence(&l, &big(&[5, 3, 20]), 5),
            Err(UniqueError::RecurrenceViolated { index: 3, .. })
        ));
        assert!(matches!(extend_by_recurrence(&l, &big(&[5]), 5), Err(UniqueError::TooFewSeeds { .. })));
    }
}
