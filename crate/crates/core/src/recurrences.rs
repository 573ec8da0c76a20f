//! Closed-form families and recurrence checks.
//!
//! Ascending constructors return a [`PredecessorFamily`], descending ones a
//! [`MaximalFamily`]. The families cover multiplicity lists, recurrences
//! with negative coefficients, common-tail rules, fixed block lists and a
//! handful of named examples.

use std::cmp::Ordering;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::coeff::{CoeffFn, MAX_DIGIT};
use crate::collections::{enumerate_asc, CollectionError, FamilyError, MaximalFamily, PredecessorFamily};
use crate::integer::{fundamental_from_family, FundamentalSeq, NumerationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecurrenceError {
    #[error("invalid multiplicity list: {0}")]
    InvalidList(String),
    #[error("invalid recurrence coefficients: {0}")]
    InvalidRecurrence(String),
    #[error("invalid block list: {0}")]
    InvalidBlocks(String),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error(transparent)]
    Collection(#[from] CollectionError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A multiplicity list `(e_1, …, e_N)` with `e_1 e_N > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityList {
    e: Vec<u64>,
}

impl MultiplicityList {
    pub fn new(e: Vec<u64>) -> Result<Self, RecurrenceError> {
        match (e.first(), e.last()) {
            (Some(&first), Some(&last)) if first > 0 && last > 0 => {}
            (None, _) => return Err(RecurrenceError::InvalidList("the list is empty".into())),
            _ => return Err(RecurrenceError::InvalidList("first and last multiplicities must be positive".into())),
        }
        if e.iter().any(|&x| x > MAX_DIGIT) {
            return Err(RecurrenceError::InvalidList("multiplicity exceeds the digit limit".into()));
        }
        Ok(MultiplicityList { e })
    }

    pub fn entries(&self) -> &[u64] {
        &self.e
    }

    /// The length `N`.
    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The pattern digit at position `k ≥ 1`: `e_r` with `r` the least
    /// positive residue of `k` mod `N`, except that `e_N` is lowered by one.
    pub fn pattern_digit(&self, k: u64) -> u64 {
        let n = self.e.len() as u64;
        let r = (k - 1) % n + 1;
        let e = self.e[r as usize - 1];
        if r == n {
            e - 1
        } else {
            e
        }
    }

    /// Coefficients of the recurrence `Q_n = e_1 Q_{n−1} + ⋯ + e_N Q_{n−N}`.
    pub fn recurrence(&self) -> Vec<BigInt> {
        self.e.iter().map(|&x| BigInt::from(x)).collect()
    }
}

/// Predecessors read from index `n − 1` downward as the repeating pattern
/// `e_1, e_2, …, e_N − 1`.
///
/// ```
/// use zeckgen::{recurrences::family_from_l, CoeffFn, MultiplicityList};
/// let fam = family_from_l(&MultiplicityList::new(vec![2, 3]).unwrap());
/// assert_eq!(*fam.delta(3).unwrap(), CoeffFn::from_digits(&[2, 2]));
/// ```
pub fn family_from_l(l: &MultiplicityList) -> PredecessorFamily {
    let l = l.clone();
    PredecessorFamily::from_fn(format!("L{:?}", l.e), move |n| {
        let terms = (1..n).map(|k| (n - k, l.pattern_digit(k))).filter(|&(_, d)| d > 0).rev().collect();
        CoeffFn::from_sorted_unchecked(terms)
    })
}

/// Maximal functions read from index `n` upward as `e_1, e_2, …, e_N − 1`
/// repeated.
pub fn maximal_from_l(l: &MultiplicityList) -> MaximalFamily {
    let digits = l.clone();
    let support = l.clone();
    let period = l.len() as u64;
    let bound = l.e.iter().copied().max().unwrap_or(1);
    MaximalFamily::builder(format!("L{:?}", l.e), move |n, k| digits.pattern_digit(k - n + 1))
        .next_support(move |n, k| (k..k + period).find(|&j| support.pattern_digit(j - n + 1) > 0))
        .periodic(move |n| (n, period))
        .digit_bound(bound)
        .build()
}

/// Recurrence `Q_n = c_1 Q_{n−1} + ⋯ + c_{N+1} Q_{n−N−1}` with every partial
/// sum `c_1 + ⋯ + c_k` at least 1 and `c_1 ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegRecurrence {
    c: Vec<i64>,
}

impl NegRecurrence {
    pub fn new(c: Vec<i64>) -> Result<Self, RecurrenceError> {
        if c.first().is_none_or(|&c1| c1 < 2) {
            return Err(RecurrenceError::InvalidRecurrence("c_1 must be at least 2".into()));
        }
        let mut sum: i128 = 0;
        for (k, &x) in c.iter().enumerate() {
            sum += i128::from(x);
            if sum < 1 {
                return Err(RecurrenceError::InvalidRecurrence(format!(
                    "partial sum through c_{} is {sum}, below 1",
                    k + 1
                )));
            }
        }
        Ok(NegRecurrence { c })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.c
    }
}

/// Output of [`family_from_neg_recurrence`].
#[derive(Debug, Clone)]
pub struct NegRecurrenceSystem {
    pub e: Vec<u64>,
    pub b: u64,
    pub family: PredecessorFamily,
    /// `Q_1 … Q_{N+1}` of the derived sequence.
    pub initial: Vec<BigUint>,
}

impl NegRecurrenceSystem {
    /// Recovers `c` from `(e, b)`: `c_1 = e_1 + 1`, `c_k = e_k − e_{k−1}`,
    /// `c_{N+1} = b − e_N`.
    pub fn coefficients(&self) -> Vec<i64> {
        let n = self.e.len();
        if n == 0 {
            return vec![self.b as i64 + 1];
        }
        let mut c = vec![self.e[0] as i64 + 1];
        for k in 1..n {
            c.push(self.e[k] as i64 - self.e[k - 1] as i64);
        }
        c.push(self.b as i64 - self.e[n - 1] as i64);
        c
    }
}

/// The common-tail family realizing a recurrence with negative
/// coefficients: `e_k = (c_1 + ⋯ + c_k) − 1`, `b = (c_1 + ⋯ + c_{N+1}) − 1`,
/// and `δ^n` has digit `b` on `[1, n−N−1]` below the top digits
/// `e_N, …, e_1` at `n−N, …, n−1`.
pub fn family_from_neg_recurrence(r: &NegRecurrence) -> Result<NegRecurrenceSystem, RecurrenceError> {
    let n_top = r.c.len() - 1;
    let mut sums = Vec::with_capacity(r.c.len());
    let mut acc: i64 = 0;
    for &x in &r.c {
        acc += x;
        sums.push((acc - 1) as u64);
    }
    let b = sums[n_top];
    let e: Vec<u64> = sums[..n_top].to_vec();
    let top = e.clone();
    let family = PredecessorFamily::from_fn(format!("neg{:?}", r.c), move |n| {
        let big_n = top.len() as u64;
        let mut terms = Vec::new();
        if n >= big_n + 2 && b > 0 {
            terms.extend((1..=n - big_n - 1).map(|k| (k, b)));
        }
        let reach = (n - 1).min(big_n);
        for k in (1..=reach).rev() {
            let d = top[k as usize - 1];
            if d > 0 {
                terms.push((n - k, d));
            }
        }
        CoeffFn::from_sorted_unchecked(terms)
    });
    let q = fundamental_from_family(&family, n_top as u64 + 1)?;
    let initial = q.terms_upto(n_top as u64 + 1)?;
    Ok(NegRecurrenceSystem { e, b, family, initial })
}

/// Result of [`verify_recurrence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceVerdict {
    Holds,
    FailsAt { n: u64, term: BigInt, combination: BigInt },
}

/// Checks `Q_n = Σ_j c_j(n) Q_{n−j}` for every `n` in `range`, where
/// `coeffs(n)` lists `c_1(n), c_2(n), …`.
pub fn verify_recurrence<F>(
    q: &FundamentalSeq,
    coeffs: F,
    range: RangeInclusive<u64>,
) -> Result<RecurrenceVerdict, NumerationError>
where
    F: Fn(u64) -> Vec<BigInt>,
{
    q.ensure(*range.end())?;
    let terms = q.terms_upto(*range.end())?;
    for n in range {
        let mut combination = BigInt::zero();
        for (j, c) in coeffs(n).iter().enumerate() {
            let idx = n as i64 - 1 - j as i64;
            if idx < 1 {
                break;
            }
            combination += c * BigInt::from(terms[idx as usize - 1].clone());
        }
        let term = BigInt::from(terms[n as usize - 1].clone());
        if term != combination {
            return Ok(RecurrenceVerdict::FailsAt { n, term, combination });
        }
    }
    Ok(RecurrenceVerdict::Holds)
}

/// Per-index digit rule for tail-rule families.
pub type DigitFn = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// `δ^n` = `tail(k)` at each `k ∈ [1, n−1−h]`, with `head[i](n)` at index
/// `n−1−i` for the `h` head rules.
///
/// ```
/// use std::sync::Arc;
/// use zeckgen::{recurrences::family_from_tail_rule, CoeffFn};
/// let fam = family_from_tail_rule("tau-n", vec![Arc::new(|n| n)], Arc::new(|k| k));
/// assert_eq!(*fam.delta(5).unwrap(), CoeffFn::from_digits(&[1, 2, 3, 5]));
/// ```
pub fn family_from_tail_rule(name: impl Into<String>, head: Vec<DigitFn>, tail: DigitFn) -> PredecessorFamily {
    PredecessorFamily::new(name, move |n| {
        let h = head.len() as u64;
        let mut terms = Vec::new();
        for k in 1..n.saturating_sub(h) {
            terms.push((k, tail(k)));
        }
        for (i, rule) in head.iter().enumerate().rev() {
            let idx = n as i64 - 1 - i as i64;
            if idx >= 1 {
                terms.push((idx as u64, rule(n)));
            }
        }
        if let Some(&(index, _)) = terms.iter().find(|&&(_, d)| d > MAX_DIGIT) {
            return Err(FamilyError::DigitOverflow { n, index });
        }
        terms.retain(|&(_, d)| d > 0);
        Ok(CoeffFn::from_sorted_unchecked(terms))
    })
}

/// Predecessors `δ^n = Σ_k (n−1−2k) β^{n−1−2k}`: digits `n−1, n−3, …` at
/// every other index below `n`.
pub fn k_bounded_family() -> PredecessorFamily {
    PredecessorFamily::from_fn("k-bounded", |n| {
        let terms = (1..n).filter(|k| (n - 1 - k) % 2 == 0).map(|k| (k, k)).collect();
        CoeffFn::from_sorted_unchecked(terms)
    })
}

/// Predecessors `δ^n = (1, 2, …, n−1)`, whose sequence is `Q_k = k!`.
pub fn factorial_family() -> PredecessorFamily {
    PredecessorFamily::from_fn("factorial", |n| CoeffFn::from_sorted_unchecked((1..n).map(|k| (k, k)).collect()))
}

/// Predecessors `δ^n = β^{n−1}`: the collection holds only zero and the
/// basis functions.
pub fn trivial_family() -> PredecessorFamily {
    PredecessorFamily::from_fn("trivial", |n| CoeffFn::from_sorted_unchecked(vec![(n - 1, 1)]))
}

/// `δ^n = β^{n−1}` for `n ≤ j+1` and `β^j + β^{n−1}` beyond.
pub fn j_plus_family(j: u64) -> PredecessorFamily {
    PredecessorFamily::from_fn(format!("j-plus-{j}"), move |n| {
        if n <= j + 1 {
            CoeffFn::from_sorted_unchecked(vec![(n - 1, 1)])
        } else {
            CoeffFn::from_sorted_unchecked(vec![(j, 1), (n - 1, 1)])
        }
    })
}

/// A family built from a list of digit blocks of length `N` that tile the
/// index line in groups `[gN+1, (g+1)N]`.
#[derive(Debug, Clone)]
pub struct FixedBlocks {
    pub family: PredecessorFamily,
    /// Blocks in ascending order, zero first.
    pub blocks: Vec<CoeffFn>,
    /// Number of blocks, equal to `Q_{N+1}` of the derived sequence.
    pub base: u64,
}

/// Builds the family whose members are concatenations of the given
/// blocks, one per group of `block_len` indices.
///
/// `δ^n` for `n` at position `r` of group `g` is the largest block below
/// `β^r`, placed in group `g`, on top of the largest block in every lower
/// group. The block list must be exactly the set of members of order at
/// most `block_len` of the resulting collection.
pub fn fixed_blocks_family(block_len: usize, blocks: &[Vec<u64>]) -> Result<FixedBlocks, RecurrenceError> {
    if block_len == 0 {
        return Err(RecurrenceError::InvalidBlocks("block length must be positive".into()));
    }
    let mut sorted = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.len() != block_len {
            return Err(RecurrenceError::InvalidBlocks(format!("block {b:?} does not have length {block_len}")));
        }
        sorted.push(CoeffFn::from_digits(b));
    }
    sorted.sort_by(|a, b| a.cmp_asc(b));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(RecurrenceError::InvalidBlocks("blocks repeat".into()));
    }
    if !sorted.first().is_some_and(CoeffFn::is_zero) {
        return Err(RecurrenceError::InvalidBlocks("the zero block is missing".into()));
    }
    let len = block_len as u64;
    let top = sorted.last().unwrap().clone();
    let below_unit: Vec<CoeffFn> = (1..=len)
        .map(|r| {
            let unit = CoeffFn::basis(r).unwrap();
            sorted.iter().rev().find(|b| b.cmp_asc(&unit) == Ordering::Less).unwrap().clone()
        })
        .collect();
    let family = PredecessorFamily::from_fn(format!("fixed-blocks-{}", sorted.len()), move |n| {
        let g = (n - 1) / len;
        let r = (n - 1) % len + 1;
        let mut terms = Vec::new();
        for h in 0..g {
            terms.extend(top.iter().map(|(i, d)| (i + h * len, d)));
        }
        terms.extend(below_unit[r as usize - 1].iter().map(|(i, d)| (i + g * len, d)));
        CoeffFn::from_sorted_unchecked(terms)
    });
    family.validate_upto(len + 1)?;
    let generated = enumerate_asc(&family, sorted.len() - 1)?;
    let mut expected: Vec<CoeffFn> = sorted[1..].to_vec();
    expected.sort_by(|a, b| a.cmp_asc(b));
    if generated != expected {
        return Err(RecurrenceError::InvalidBlocks(
            "the blocks are not the members of order at most the block length".into(),
        ));
    }
    Ok(FixedBlocks { family, base: sorted.len() as u64, blocks: sorted })
}

/// The seven 0/1 blocks of length 3 other than `(1,1,0)`.
pub fn seven_blocks() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for bits in 0..8u64 {
        let b = vec![bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
        if b != [1, 1, 0] {
            out.push(b);
        }
    }
    out
}

/// Maximal functions with digit `k` at `k = n, n+2, n+4, …` and zeros in
/// between.
pub fn odd_index_maximal() -> MaximalFamily {
    MaximalFamily::builder("odd-index", |n, k| if (k - n) % 2 == 0 { k } else { 0 })
        .next_support(|n, k| Some(if (k - n) % 2 == 0 { k } else { k + 1 }))
        .build()
}

/// Maximal functions supported on `m_1 = n`, `m_{i+1} = m_i (m_i + 1)`, all
/// digits 1. With `Q_k = 1/(k+1)` the sums telescope.
pub fn harmonic_maximal() -> MaximalFamily {
    MaximalFamily::builder("harmonic", |n, k| u64::from(harmonic_next(n, k) == Some(k)))
        .next_support(harmonic_next)
        .digit_bound(1)
        .build()
}

/// Smallest support index of the harmonic `β̄^n` at or after `k`.
fn harmonic_next(n: u64, k: u64) -> Option<u64> {
    let mut m = n;
    while m < k {
        m = m.checked_mul(m.checked_add(1)?)?;
    }
    Some(m)
}

/// Block-system maximal functions with period `N`: for `n = gN + r`,
/// `β̄^n` has digit `a_r` at `n`, `b_{rj}` at `gN + j` for `r < j ≤ N`, and
/// continues as `β̄^{(g+1)N+1}`.
///
/// `b[r-1][j-1]` holds `b_{rj}`; entries with `j ≤ r` are ignored.
pub fn block_system_maximal(a: Vec<u64>, b: Vec<Vec<u64>>) -> Result<MaximalFamily, RecurrenceError> {
    let len = a.len() as u64;
    if len == 0 || a.contains(&0) {
        return Err(RecurrenceError::InvalidBlocks("every a_k must be positive".into()));
    }
    if b.len() != a.len() || b.iter().any(|row| row.len() != a.len()) {
        return Err(RecurrenceError::InvalidBlocks("b must be an N×N table".into()));
    }
    let bound = a.iter().chain(b.iter().flatten()).copied().max().unwrap_or(1);
    let digit = move |n: u64, k: u64| -> u64 {
        let (g, r) = ((n - 1) / len, (n - 1) % len + 1);
        let (gk, j) = ((k - 1) / len, (k - 1) % len + 1);
        let row = if gk == g { r } else { 1 };
        if j == row {
            a[row as usize - 1]
        } else if j > row {
            b[row as usize - 1][j as usize - 1]
        } else {
            0
        }
    };
    Ok(MaximalFamily::builder(format!("block-system-{len}"), digit)
        .periodic(move |n| (((n - 1) / len + 1) * len + 1, len))
        .digit_bound(bound)
        .scan_limit(2 * len + 1)
        .build())
}

/// The sevenths system: blocks `(1,1,1)`, `(·,1,0)`, `(·,·,1)` followed by
/// all ones.
pub fn sevenths_maximal() -> MaximalFamily {
    block_system_maximal(vec![1, 1, 1], vec![vec![0, 1, 1], vec![0, 0, 0], vec![0, 0, 0]]).expect("valid block system")
}

/// `β̄^n = lead·β^n + tail·Σ_{k>n} β^k`.
pub fn lead_tail_maximal(lead: u64, tail: u64) -> MaximalFamily {
    MaximalFamily::builder(format!("lead-{lead}-tail-{tail}"), move |n, k| if k == n { lead } else { tail })
        .next_support(move |n, k| if k == n || tail > 0 { Some(k) } else { None })
        .periodic(|n| (n + 1, 1))
        .digit_bound(lead.max(tail))
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ml(e: &[u64]) -> MultiplicityList {
        MultiplicityList::new(e.to_vec()).unwrap()
    }

    #[test]
    fn multiplicity_list_validation() {
        assert!(MultiplicityList::new(vec![]).is_err());
        assert!(MultiplicityList::new(vec![0, 1]).is_err());
        assert!(MultiplicityList::new(vec![1, 0]).is_err());
        assert!(MultiplicityList::new(vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn l_patterns() {
        let fib = family_from_l(&ml(&[1, 1]));
        assert_eq!(*fib.delta(5).unwrap(), CoeffFn::from_digits(&[0, 1, 0, 1]));
        assert_eq!(*fib.delta(6).unwrap(), CoeffFn::from_digits(&[1, 0, 1, 0, 1]));
        let bin = family_from_l(&ml(&[1, 2]));
        assert_eq!(*bin.delta(4).unwrap(), CoeffFn::from_digits(&[1, 1, 1]));
        let l23 = family_from_l(&ml(&[2, 3]));
        assert_eq!(*l23.delta(3).unwrap(), CoeffFn::from_digits(&[2, 2]));
        let l113 = family_from_l(&ml(&[11, 3]));
        assert_eq!(*l113.delta(4).unwrap(), CoeffFn::from_digits(&[11, 2, 11]));

        let max_fib = maximal_from_l(&ml(&[1, 1]));
        assert_eq!(max_fib.truncated(2, 8).unwrap(), CoeffFn::from_pairs([(2, 1), (4, 1), (6, 1), (8, 1)]).unwrap());
        let max_bin = maximal_from_l(&ml(&[1, 2]));
        assert_eq!(max_bin.truncated(3, 6).unwrap(), CoeffFn::from_digits(&[0, 0, 1, 1, 1, 1]));
        for n in 1..20 {
            assert_eq!(maximal_from_l(&ml(&[3, 0, 2])).digit(n, n).unwrap(), 3);
        }
    }

    #[test]
    fn neg_recurrence_parameters() {
        let sys = family_from_neg_recurrence(&NegRecurrence::new(vec![8, -2, -3]).unwrap()).unwrap();
        assert_eq!((sys.e.clone(), sys.b), (vec![7, 5], 2));
        assert_eq!(sys.initial, [1u32, 8, 62].map(BigUint::from));
        assert_eq!(*sys.family.delta(3).unwrap(), CoeffFn::from_digits(&[5, 7]));
        assert_eq!(*sys.family.delta(5).unwrap(), CoeffFn::from_digits(&[2, 2, 5, 7]));
        assert_eq!(sys.coefficients(), vec![8, -2, -3]);

        let sys = family_from_neg_recurrence(&NegRecurrence::new(vec![3, -1]).unwrap()).unwrap();
        assert_eq!((sys.e.clone(), sys.b), (vec![2], 1));
        assert_eq!(*sys.family.delta(4).unwrap(), CoeffFn::from_digits(&[1, 1, 2]));

        assert!(NegRecurrence::new(vec![1, 1]).is_err());
        assert!(NegRecurrence::new(vec![3, -3]).is_err());
        let single = family_from_neg_recurrence(&NegRecurrence::new(vec![4]).unwrap()).unwrap();
        assert_eq!((single.e.len(), single.b), (0, 3));
        assert_eq!(single.coefficients(), vec![4]);
    }

    #[test]
    fn named_families() {
        let kb = k_bounded_family();
        assert_eq!(*kb.delta(7).unwrap(), CoeffFn::from_digits(&[0, 2, 0, 4, 0, 6]));
        assert_eq!(*kb.delta(4).unwrap(), CoeffFn::from_digits(&[1, 0, 3]));
        assert_eq!(*factorial_family().delta(5).unwrap(), CoeffFn::from_digits(&[1, 2, 3, 4]));
        assert_eq!(*j_plus_family(3).delta(6).unwrap(), CoeffFn::from_pairs([(3, 1), (5, 1)]).unwrap());
    }

    #[test]
    fn fixed_blocks_predecessors() {
        let fb = fixed_blocks_family(3, &seven_blocks()).unwrap();
        assert_eq!(fb.base, 7);
        assert_eq!(*fb.family.delta(2).unwrap(), CoeffFn::from_digits(&[1]));
        assert_eq!(*fb.family.delta(3).unwrap(), CoeffFn::from_digits(&[0, 1]));
        assert_eq!(*fb.family.delta(4).unwrap(), CoeffFn::from_digits(&[1, 1, 1]));
        assert_eq!(*fb.family.delta(6).unwrap(), CoeffFn::from_digits(&[1, 1, 1, 0, 1]));
        assert_eq!(*fb.family.delta(9).unwrap(), CoeffFn::from_digits(&[1, 1, 1, 1, 1, 1, 0, 1]));
        let mut missing = seven_blocks();
        missing.retain(|b| b != &[0, 0, 1]);
        assert!(fixed_blocks_family(3, &missing).is_err());
    }

    #[test]
    fn sevenths_digits() {
        let fam = sevenths_maximal();
        assert_eq!(fam.truncated(1, 6).unwrap(), CoeffFn::from_digits(&[1, 1, 1, 1, 1, 1]));
        assert_eq!(fam.truncated(2, 6).unwrap(), CoeffFn::from_digits(&[0, 1, 0, 1, 1, 1]));
        assert_eq!(fam.truncated(3, 6).unwrap(), CoeffFn::from_digits(&[0, 0, 1, 1, 1, 1]));
        assert_eq!(fam.truncated(5, 9).unwrap(), CoeffFn::from_digits(&[0, 0, 0, 0, 1, 0, 1, 1, 1]));
    }

    #[test]
    fn harmonic_support() {
        let fam = harmonic_maximal();
        assert_eq!(fam.truncated(3, 200).unwrap(), CoeffFn::from_pairs([(3, 1), (12, 1), (156, 1)]).unwrap());
        assert_eq!(fam.next_support(2, 3).unwrap(), 6);
        assert_eq!(fam.next_support(2, 7).unwrap(), 42);
    }
}
