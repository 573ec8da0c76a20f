//! Zeckendorf collections in ascending and descending order.
//!
//! An ascending collection is determined by its predecessor family `δ^n`
//! and a descending one by its maximal family `β̄^n`. Every member splits
//! uniquely into blocks, and the block structure gives the successor rule.

mod family;

use std::fmt;

pub use family::{FamilyError, MaximalFamily, MaximalFamilyBuilder, PredecessorFamily};

use crate::coeff::{CoeffError, CoeffFn, IndexInterval, MAX_DIGIT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CollectionError {
    #[error("not a member: digit at index {witness} exceeds the admissible pattern")]
    NotMember { witness: u64 },
    #[error("already the largest member below the horizon")]
    AtMaximum,
    #[error("support reaches index {index}, beyond the horizon {horizon}")]
    BeyondHorizon { index: u64, horizon: u64 },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Proper,
    Maximal,
    Zero,
}

/// A contiguous piece of a block decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub support: IndexInterval,
    pub digits: CoeffFn,
    /// Descending only: the block is a prefix of `β̄^n` cut off by the horizon.
    pub truncated: bool,
}

impl Block {
    /// Lowest index of the support.
    pub fn start(&self) -> u64 {
        self.support.lo()
    }

    /// Highest index of the support (always finite for blocks).
    pub fn end(&self) -> u64 {
        self.support.hi().finite().expect("block supports are finite")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match (self.kind, self.truncated) {
            (_, true) => "truncated",
            (BlockKind::Proper, _) => "proper",
            (BlockKind::Maximal, _) => "maximal",
            (BlockKind::Zero, _) => "zero",
        };
        write!(f, "{kind} {} {}", self.support, self.digits)
    }
}

/// Blocks ordered from index 1 upward, with abutting supports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// Reassembles the decomposed function.
    pub fn concat(&self) -> CoeffFn {
        let terms: Vec<(u64, u64)> = self.blocks.iter().flat_map(|b| b.digits.iter()).collect();
        CoeffFn::from_sorted_unchecked(terms)
    }

    /// Blocks with at least one nonzero digit.
    pub fn nonzero(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind != BlockKind::Zero)
    }
}

/// Outcome of scanning one block downward from `top`.
enum AscScan {
    /// A proper (or zero) block `[lo, top]`.
    Proper { lo: u64 },
    /// The digits match `δ^{top+1}` all the way down to index 1.
    Maximal,
}

/// Compares `mu` against `δ^{top+1}` from index `top` downward, visiting
/// only indices where one of them is nonzero.
fn scan_asc_block(mu: &CoeffFn, top: u64, fam: &PredecessorFamily) -> Result<AscScan, CollectionError> {
    let delta = fam.delta(top + 1)?;
    let mut ms = mu.iter().rev().skip_while(|&(i, _)| i > top).peekable();
    let mut ds = delta.iter().rev().peekable();
    loop {
        let k = match (ms.peek(), ds.peek()) {
            (None, None) => return Ok(AscScan::Maximal),
            (Some(&(i, _)), None) => i,
            (None, Some(&(j, _))) => j,
            (Some(&(i, _)), Some(&(j, _))) => i.max(j),
        };
        let m = if ms.peek().is_some_and(|&(i, _)| i == k) { ms.next().unwrap().1 } else { 0 };
        let d = if ds.peek().is_some_and(|&(j, _)| j == k) { ds.next().unwrap().1 } else { 0 };
        if m < d {
            return Ok(AscScan::Proper { lo: k });
        }
        if m > d {
            return Err(CollectionError::NotMember { witness: k });
        }
    }
}

/// Splits `mu` into its ascending blocks.
///
/// Scans from the top index down against the predecessor one index above;
/// the first smaller digit closes a proper block and a full match closes the
/// bottom maximal block. Indices between nonzero blocks become zero blocks.
pub fn decompose_asc(mu: &CoeffFn, fam: &PredecessorFamily) -> Result<BlockDecomposition, CollectionError> {
    let mut blocks = Vec::new();
    let mut top = mu.order_asc();
    while top >= 1 {
        match scan_asc_block(mu, top, fam)? {
            AscScan::Proper { lo } => {
                let digits = mu.restrict_range(lo, top);
                let kind = if digits.is_zero() { BlockKind::Zero } else { BlockKind::Proper };
                blocks.push(Block { kind, support: IndexInterval::closed(lo, top)?, digits, truncated: false });
                top = lo - 1;
            }
            AscScan::Maximal => {
                blocks.push(Block {
                    kind: BlockKind::Maximal,
                    support: IndexInterval::closed(1, top)?,
                    digits: (*fam.delta(top + 1)?).clone(),
                    truncated: false,
                });
                top = 0;
            }
        }
    }
    blocks.reverse();
    Ok(BlockDecomposition { blocks })
}

/// Returns `Some(n)` when the bottom block of `mu` is the maximal block
/// `δ^n`, without materializing the decomposition.
fn bottom_maximal(mu: &CoeffFn, fam: &PredecessorFamily) -> Result<Option<u64>, CollectionError> {
    let mut top = mu.order_asc();
    while top >= 1 {
        match scan_asc_block(mu, top, fam)? {
            AscScan::Proper { lo } => top = lo - 1,
            AscScan::Maximal => return Ok(Some(top + 1)),
        }
    }
    Ok(None)
}

pub fn is_member_asc(mu: &CoeffFn, fam: &PredecessorFamily) -> bool {
    bottom_maximal(mu, fam).is_ok()
}

fn add_unit(f: &mut CoeffFn, i: u64) -> Result<(), CollectionError> {
    let d = f.digit(i);
    if d >= MAX_DIGIT {
        return Err(CoeffError::DigitOverflow { index: i, digit: d }.into());
    }
    f.set(i, d + 1);
    Ok(())
}

/// The next member after `mu` in ascending order.
///
/// ```
/// use zeckgen::{recurrences::family_from_l, collections::successor_asc, CoeffFn, MultiplicityList};
/// let fib = family_from_l(&MultiplicityList::new(vec![1, 1]).unwrap());
/// let mu = CoeffFn::from_digits(&[0, 1, 0, 1, 0, 0, 1]);
/// let next = successor_asc(&mu, &fib).unwrap();
/// assert_eq!(next, CoeffFn::from_pairs([(5, 1), (7, 1)]).unwrap());
/// ```
pub fn successor_asc(mu: &CoeffFn, fam: &PredecessorFamily) -> Result<CoeffFn, CollectionError> {
    match bottom_maximal(mu, fam)? {
        Some(n) => {
            let mut out = mu.restrict_range(n, u64::MAX);
            add_unit(&mut out, n)?;
            Ok(out)
        }
        None => {
            let mut out = mu.clone();
            add_unit(&mut out, 1)?;
            Ok(out)
        }
    }
}

/// The member immediately below `mu`, or `None` for zero.
pub fn predecessor_asc(mu: &CoeffFn, fam: &PredecessorFamily) -> Result<Option<CoeffFn>, CollectionError> {
    bottom_maximal(mu, fam)?;
    let Some(n) = mu.order_desc().finite() else {
        return Ok(None);
    };
    let mut upper = mu.clone();
    upper.set(n, mu.digit(n) - 1);
    if n == 1 {
        return Ok(Some(upper));
    }
    let delta = fam.delta(n)?;
    Ok(Some(delta.union(&upper)?))
}

/// Iterator over the members of an ascending collection, starting after zero.
pub struct AscendingIter {
    fam: PredecessorFamily,
    current: CoeffFn,
}

impl AscendingIter {
    pub fn new(fam: &PredecessorFamily) -> Self {
        AscendingIter { fam: fam.clone(), current: CoeffFn::zero() }
    }

    /// Continues after `start`, which must be a member.
    pub fn starting_after(fam: &PredecessorFamily, start: CoeffFn) -> Self {
        AscendingIter { fam: fam.clone(), current: start }
    }
}

impl Iterator for AscendingIter {
    type Item = Result<CoeffFn, CollectionError>;

    fn next(&mut self) -> Option<Self::Item> {
        match successor_asc(&self.current, &self.fam) {
            Ok(next) => {
                self.current = next.clone();
                Some(Ok(next))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

/// The first `count` nonzero members `τ^1, …, τ^count` in ascending order.
pub fn enumerate_asc(fam: &PredecessorFamily, count: usize) -> Result<Vec<CoeffFn>, CollectionError> {
    AscendingIter::new(fam).take(count).collect()
}

fn check_horizon(eps: &CoeffFn, horizon: u64) -> Result<(), CollectionError> {
    if horizon == 0 {
        return Err(CollectionError::ZeroHorizon);
    }
    let top = eps.order_asc();
    if top > horizon {
        return Err(CollectionError::BeyondHorizon { index: top, horizon });
    }
    Ok(())
}

/// Splits `eps`, viewed as a member of the truncated collection `E^M` with
/// `M = horizon`, into descending blocks.
///
/// Each block starts at index `n` and follows `β̄^n` upward until the first
/// smaller digit. A block still matching at the horizon is flagged
/// `truncated`.
pub fn decompose_desc(eps: &CoeffFn, horizon: u64, fam: &MaximalFamily) -> Result<BlockDecomposition, CollectionError> {
    check_horizon(eps, horizon)?;
    let mut blocks = Vec::new();
    let mut n = 1;
    while n <= horizon {
        let mut es = eps.iter().skip_while(|&(i, _)| i < n).peekable();
        let mut j = n;
        let (end, truncated) = loop {
            let e = if es.peek().is_some_and(|&(i, _)| i == j) { es.next().unwrap().1 } else { 0 };
            let b = fam.digit(n, j)?;
            if e < b {
                break (j, false);
            }
            if e > b {
                return Err(CollectionError::NotMember { witness: j });
            }
            if j == horizon {
                break (j, true);
            }
            // Skip ahead to the next index where either side is nonzero.
            let next_eps = es.peek().map_or(u64::MAX, |&(i, _)| i);
            let next_fam = fam.next_support(n, j + 1)?;
            let next = next_eps.min(next_fam);
            if next > horizon {
                break (horizon, true);
            }
            j = next;
        };
        let digits = eps.restrict_range(n, end);
        let kind = if digits.is_zero() && !truncated { BlockKind::Zero } else { BlockKind::Proper };
        blocks.push(Block { kind, support: IndexInterval::closed(n, end)?, digits, truncated });
        n = end + 1;
    }
    Ok(BlockDecomposition { blocks })
}

/// Membership in the truncated collection `E^M`.
pub fn is_member_desc(eps: &CoeffFn, horizon: u64, fam: &MaximalFamily) -> bool {
    decompose_desc(eps, horizon, fam).is_ok()
}

/// The next member of `E^M` after `eps` in descending order.
///
/// If the last block is cut off by the horizon it is dropped and a unit is
/// carried into the index just below its start; otherwise a unit is added
/// at the horizon.
pub fn successor_desc(eps: &CoeffFn, horizon: u64, fam: &MaximalFamily) -> Result<CoeffFn, CollectionError> {
    let dec = decompose_desc(eps, horizon, fam)?;
    let last = dec.blocks.last().expect("horizon >= 1 gives at least one block");
    if last.truncated {
        let start = last.start();
        if start == 1 {
            return Err(CollectionError::AtMaximum);
        }
        let mut out = eps.restrict_range(1, start - 1);
        add_unit(&mut out, start - 1)?;
        Ok(out)
    } else {
        let mut out = eps.clone();
        add_unit(&mut out, horizon)?;
        Ok(out)
    }
}

/// All members of `E^M` in descending order, from zero up to `β̄^1` cut at
/// the horizon. `limit` caps the number of members produced.
pub fn enumerate_desc(fam: &MaximalFamily, horizon: u64, limit: usize) -> Result<Vec<CoeffFn>, CollectionError> {
    let mut out = vec![CoeffFn::zero()];
    while out.len() < limit {
        match successor_desc(out.last().unwrap(), horizon, fam) {
            Ok(next) => out.push(next),
            Err(CollectionError::AtMaximum) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
