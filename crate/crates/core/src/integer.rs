//! Numeration of positive integers.
//!
//! A [`FundamentalSeq`] holds the terms `Q_1, Q_2, …` either derived from a
//! predecessor family (`Q_n = 1 + Σ δ^n_k Q_k`) or supplied by the caller.
//! Derived sequences support greedy block encoding; supplied ones fall back
//! to a bounded walk through the collection.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::CoeffFn;
use crate::collections::{AscendingIter, CollectionError, FamilyError, PredecessorFamily};

/// Default cap on how far a sequence may be extended on demand.
pub const DEFAULT_EXTENSION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumerationError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Collection(#[from] CollectionError),
    #[error("sequence is not strictly increasing at index {0}")]
    NotIncreasing(u64),
    #[error("first term must be 1, found {0}")]
    FirstTermNotOne(BigUint),
    #[error("index {index} lies beyond the {len} supplied terms")]
    OutOfRange { index: u64, len: u64 },
    #[error("term {index} is not positive")]
    NonPositive { index: u64 },
    #[error("extension past index {0} exceeds the configured limit")]
    ExtensionLimit(u64),
    #[error("{0} has no expansion in this system")]
    NotRepresentable(BigUint),
    #[error("search gave up after visiting {0} members")]
    WalkLimit(usize),
    #[error("greedy expansion left remainder {0}; family and sequence disagree")]
    Integrity(BigUint),
    #[error("index 0 is outside the index domain")]
    ZeroIndex,
}

type Generator = dyn Fn(u64, &[BigUint]) -> Result<BigUint, NumerationError> + Send + Sync;

enum Source {
    Family(PredecessorFamily),
    Explicit,
    Generator(Box<Generator>),
}

struct SeqInner {
    name: String,
    source: Source,
    terms: RwLock<Vec<BigUint>>,
    increasing: bool,
    limit: u64,
}

/// Terms `Q_1, Q_2, …` of a numeration system, extended lazily and cached.
#[derive(Clone)]
pub struct FundamentalSeq {
    inner: Arc<SeqInner>,
}

impl fmt::Debug for FundamentalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FundamentalSeq")
            .field("name", &self.inner.name)
            .field("materialized", &self.inner.terms.read().map(|t| t.len()).unwrap_or(0))
            .finish()
    }
}

impl FundamentalSeq {
    fn build(name: String, source: Source, terms: Vec<BigUint>, increasing: bool) -> Self {
        FundamentalSeq {
            inner: Arc::new(SeqInner {
                name,
                source,
                terms: RwLock::new(terms),
                increasing,
                limit: DEFAULT_EXTENSION_LIMIT,
            }),
        }
    }

    /// The sequence `Q_1 = 1`, `Q_n = 1 + Σ δ^n_k Q_k` of a family, extended
    /// on demand.
    pub fn from_family(fam: &PredecessorFamily) -> Self {
        Self::build(fam.name().to_string(), Source::Family(fam.clone()), vec![BigUint::one()], true)
    }

    /// A finite list of terms. With `increasing` set, strict growth is
    /// checked here.
    pub fn explicit(name: impl Into<String>, terms: Vec<BigUint>, increasing: bool) -> Result<Self, NumerationError> {
        check_terms(&terms, 1, increasing)?;
        Ok(Self::build(name.into(), Source::Explicit, terms, increasing))
    }

    /// A sequence whose term `k` is produced from the earlier terms, after
    /// the given seeds.
    pub fn from_generator<F>(
        name: impl Into<String>,
        seeds: Vec<BigUint>,
        increasing: bool,
        gen: F,
    ) -> Result<Self, NumerationError>
    where
        F: Fn(u64, &[BigUint]) -> Result<BigUint, NumerationError> + Send + Sync + 'static,
    {
        check_terms(&seeds, 1, increasing)?;
        Ok(Self::build(name.into(), Source::Generator(Box::new(gen)), seeds, increasing))
    }

    /// `Q_n = Σ_j c_j Q_{n−j}` after the seeds, for signed coefficients
    /// `c_1, c_2, …`. A nonpositive term is reported as an error.
    pub fn linear_recurrence(
        name: impl Into<String>,
        seeds: Vec<BigUint>,
        coeffs: Vec<BigInt>,
        increasing: bool,
    ) -> Result<Self, NumerationError> {
        Self::from_generator(name, seeds, increasing, move |k, prev| {
            let mut acc = BigInt::zero();
            for (j, c) in coeffs.iter().enumerate() {
                let idx = prev.len() as i64 - 1 - j as i64;
                if idx < 0 {
                    break;
                }
                acc += c * BigInt::from(prev[idx as usize].clone());
            }
            if !acc.is_positive() {
                return Err(NumerationError::NonPositive { index: k });
            }
            Ok(acc.to_biguint().expect("positive"))
        })
    }

    /// Sets the extension cap. Must be called before the sequence is cloned.
    pub fn with_extension_limit(mut self, limit: u64) -> Self {
        Arc::get_mut(&mut self.inner).expect("set the extension limit before sharing the sequence").limit = limit;
        self
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn is_increasing(&self) -> bool {
        self.inner.increasing
    }

    /// The family this sequence was derived from, if any.
    pub fn family(&self) -> Option<&PredecessorFamily> {
        match &self.inner.source {
            Source::Family(f) => Some(f),
            _ => None,
        }
    }

    /// Number of cached terms.
    pub fn materialized(&self) -> u64 {
        self.inner.terms.read().expect("sequence memo poisoned").len() as u64
    }

    /// Makes sure `Q_1 … Q_k` are cached.
    pub fn ensure(&self, k: u64) -> Result<(), NumerationError> {
        if self.materialized() >= k {
            return Ok(());
        }
        if k > self.inner.limit {
            return Err(NumerationError::ExtensionLimit(self.inner.limit));
        }
        let mut terms = self.inner.terms.write().expect("sequence memo poisoned");
        while (terms.len() as u64) < k {
            let n = terms.len() as u64 + 1;
            let next = match &self.inner.source {
                Source::Explicit => return Err(NumerationError::OutOfRange { index: k, len: terms.len() as u64 }),
                Source::Family(fam) => {
                    let delta = fam.delta(n)?;
                    let mut acc = BigUint::one();
                    for (i, d) in delta.iter() {
                        acc += &terms[i as usize - 1] * d;
                    }
                    acc
                }
                Source::Generator(gen) => gen(n, &terms)?,
            };
            if next.is_zero() {
                return Err(NumerationError::NonPositive { index: n });
            }
            if self.inner.increasing && terms.last().is_some_and(|last| &next <= last) {
                return Err(NumerationError::NotIncreasing(n));
            }
            terms.push(next);
        }
        Ok(())
    }

    /// The term `Q_k`.
    pub fn term(&self, k: u64) -> Result<BigUint, NumerationError> {
        if k == 0 {
            return Err(NumerationError::ZeroIndex);
        }
        self.ensure(k)?;
        Ok(self.inner.terms.read().expect("sequence memo poisoned")[k as usize - 1].clone())
    }

    /// `Q_1 … Q_k`.
    pub fn terms_upto(&self, k: u64) -> Result<Vec<BigUint>, NumerationError> {
        self.ensure(k)?;
        Ok(self.inner.terms.read().expect("sequence memo poisoned")[..k as usize].to_vec())
    }

    /// Largest `n` with `Q_n ≤ x` for an increasing sequence.
    pub fn largest_index_le(&self, x: &BigUint) -> Result<Option<u64>, NumerationError> {
        if &self.term(1)? > x {
            return Ok(None);
        }
        let mut hi = self.materialized().max(1);
        loop {
            match self.term(hi) {
                Ok(t) if &t <= x => hi = hi.saturating_mul(2).min(self.inner.limit.max(hi + 1)),
                Ok(_) => break,
                Err(NumerationError::OutOfRange { len, .. }) => {
                    hi = len;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let terms = self.inner.terms.read().expect("sequence memo poisoned");
        Ok(Some(terms[..hi as usize].partition_point(|t| t <= x) as u64))
    }

    /// Smallest `M` such that every member of order at least `M` has value
    /// above `bound`.
    ///
    /// Exact for increasing sequences. Otherwise the sequence is assumed to
    /// stay above `bound` once 64 consecutive terms do.
    pub fn order_cutoff(&self, bound: &BigUint) -> Result<u64, NumerationError> {
        if self.inner.increasing {
            return Ok(self.largest_index_le(bound)?.map_or(1, |n| n + 1));
        }
        const WINDOW: u64 = 64;
        let mut last_le = 0;
        let mut k = 1;
        loop {
            match self.term(k) {
                Ok(t) if &t <= bound => last_le = k,
                Ok(_) => {}
                Err(NumerationError::OutOfRange { .. }) => return Ok(last_le + 1),
                Err(e) => return Err(e),
            }
            if k >= last_le + WINDOW {
                return Ok(last_le + 1);
            }
            k += 1;
        }
    }
}

fn check_terms(terms: &[BigUint], first_index: u64, increasing: bool) -> Result<(), NumerationError> {
    for (k, t) in terms.iter().enumerate() {
        if t.is_zero() {
            return Err(NumerationError::NonPositive { index: first_index + k as u64 });
        }
    }
    if increasing {
        for (k, w) in terms.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(NumerationError::NotIncreasing(first_index + k as u64 + 1));
            }
        }
    }
    Ok(())
}

/// The derived sequence of `fam`, materialized through `n_max`.
///
/// ```
/// use zeckgen::{integer::fundamental_from_family, recurrences::k_bounded_family};
/// let q = fundamental_from_family(&k_bounded_family(), 4).unwrap();
/// assert_eq!(q.terms_upto(4).unwrap(), [1u32, 2, 5, 17].map(Into::into));
/// ```
pub fn fundamental_from_family(fam: &PredecessorFamily, n_max: u64) -> Result<FundamentalSeq, NumerationError> {
    let q = FundamentalSeq::from_family(fam);
    q.ensure(n_max)?;
    Ok(q)
}

/// Greedy predecessors `δ^n` for an increasing sequence with `Q_1 = 1`.
///
/// Digits are chosen from index `n − 1` downward, each the largest that
/// keeps the running remainder of `Q_n − 1` nonnegative; the remainder ends
/// at zero because `Q_1 = 1`. The first `n_max` rows are validated here,
/// later rows on demand.
pub fn family_from_sequence(q: &FundamentalSeq, n_max: u64) -> Result<PredecessorFamily, NumerationError> {
    if !q.is_increasing() {
        return Err(NumerationError::NotIncreasing(0));
    }
    let first = q.term(1)?;
    if !first.is_one() {
        return Err(NumerationError::FirstTermNotOne(first));
    }
    let seq = q.clone();
    let fam = PredecessorFamily::new(format!("greedy({})", q.name()), move |n| greedy_row(&seq, n));
    fam.validate_upto(n_max)?;
    Ok(fam)
}

fn greedy_row(q: &FundamentalSeq, n: u64) -> Result<CoeffFn, FamilyError> {
    let rule_err = |e: NumerationError| FamilyError::Rule(e.to_string());
    let mut rem = q.term(n).map_err(rule_err)? - 1u32;
    let mut terms = Vec::new();
    for j in (1..n).rev() {
        let t = q.term(j).map_err(rule_err)?;
        let d = &rem / &t;
        if !d.is_zero() {
            rem -= &d * &t;
            let d = d.to_u64().filter(|&d| d <= crate::coeff::MAX_DIGIT);
            terms.push((j, d.ok_or(FamilyError::DigitOverflow { n, index: j })?));
        }
    }
    terms.reverse();
    CoeffFn::from_pairs(terms).map_err(|e| FamilyError::Rule(e.to_string()))
}

/// The expansion of `x` in the collection of `fam`.
///
/// For a sequence derived from a family the block greedy is used: take the
/// largest `Q_n ≤ x`, follow `δ^{n+1}` downward taking full digits while they
/// fit, close the block with the largest digit that fits and continue on
/// the remainder. Supplied sequences are searched member by member.
pub fn encode_int(x: &BigUint, q: &FundamentalSeq, fam: &PredecessorFamily) -> Result<CoeffFn, NumerationError> {
    if x.is_zero() {
        return Ok(CoeffFn::zero());
    }
    if q.family().is_some() {
        encode_greedy(x, q, fam)
    } else {
        encode_by_walk(x, q, fam, 10_000_000)
    }
}

fn encode_greedy(x: &BigUint, q: &FundamentalSeq, fam: &PredecessorFamily) -> Result<CoeffFn, NumerationError> {
    let mut rem = x.clone();
    let mut terms: Vec<(u64, u64)> = Vec::new();
    'blocks: while !rem.is_zero() {
        let n = q.largest_index_le(&rem)?.expect("Q_1 = 1 fits any positive remainder");
        let delta = fam.delta(n + 1)?;
        for j in (1..=n).rev() {
            let full = delta.digit(j);
            let t = q.term(j)?;
            let cost = &t * full;
            if cost <= rem {
                rem -= cost;
                if full > 0 {
                    terms.push((j, full));
                }
            } else {
                let d = (&rem / &t).to_u64().expect("below a u64 digit");
                rem -= &t * d;
                if d > 0 {
                    terms.push((j, d));
                }
                continue 'blocks;
            }
        }
        // The maximal block δ^{n+1} sums to Q_{n+1} − 1 ≥ x, so it uses up x.
        if !rem.is_zero() {
            return Err(NumerationError::Integrity(rem));
        }
    }
    Ok(CoeffFn::from_pairs(terms).expect("greedy digits are in range"))
}

/// Searches the members of order below the cutoff for one with value `x`.
pub fn encode_by_walk(
    x: &BigUint,
    q: &FundamentalSeq,
    fam: &PredecessorFamily,
    walk_limit: usize,
) -> Result<CoeffFn, NumerationError> {
    if x.is_zero() {
        return Ok(CoeffFn::zero());
    }
    let cutoff = q.order_cutoff(x)?;
    for (visited, mu) in AscendingIter::new(fam).enumerate() {
        let mu = mu?;
        if mu.order_asc() >= cutoff {
            break;
        }
        if visited >= walk_limit {
            return Err(NumerationError::WalkLimit(visited));
        }
        if &decode_int(&mu, q)? == x {
            return Ok(mu);
        }
    }
    Err(NumerationError::NotRepresentable(x.clone()))
}

/// `Σ μ_k Q_k`.
pub fn decode_int(mu: &CoeffFn, q: &FundamentalSeq) -> Result<BigUint, NumerationError> {
    q.ensure(mu.order_asc())?;
    let terms = q.inner.terms.read().expect("sequence memo poisoned");
    let mut acc = BigUint::zero();
    for (i, d) in mu.iter() {
        acc += &terms[i as usize - 1] * d;
    }
    Ok(acc)
}

/// The shift map: re-evaluates the expansion of `x` with every index moved
/// up by one, `Σ ε_k Q_{k+1}`.
pub fn shift_psi(x: &BigUint, q: &FundamentalSeq, fam: &PredecessorFamily) -> Result<BigUint, NumerationError> {
    let eps = encode_int(x, q, fam)?;
    q.ensure(eps.order_asc() + 1)?;
    let mut acc = BigUint::zero();
    for (i, d) in eps.iter() {
        acc += q.term(i + 1)? * d;
    }
    Ok(acc)
}

/// Two members with the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub first: CoeffFn,
    pub second: CoeffFn,
    pub value: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetReport {
    /// Distinct values `≤ bound` of nonzero members, sorted.
    pub values: Vec<BigUint>,
    /// The first pair found (in ascending member order) sharing a value.
    pub collision: Option<Collision>,
    /// Number of members visited.
    pub members_scanned: usize,
}

/// All values `Σ μQ ≤ bound` over nonzero members `μ`.
pub fn enumerate_subset(
    q: &FundamentalSeq,
    fam: &PredecessorFamily,
    bound: &BigUint,
) -> Result<SubsetReport, NumerationError> {
    let cutoff = q.order_cutoff(bound)?;
    let mut seen: HashMap<BigUint, CoeffFn> = HashMap::new();
    let mut collision = None;
    let mut scanned = 0;
    for mu in AscendingIter::new(fam) {
        let mu = mu?;
        if mu.order_asc() >= cutoff {
            break;
        }
        scanned += 1;
        let v = decode_int(&mu, q)?;
        if &v > bound {
            continue;
        }
        match seen.get(&v) {
            Some(prev) => {
                if collision.is_none() {
                    collision = Some(Collision { first: prev.clone(), second: mu, value: v });
                }
            }
            None => {
                seen.insert(v, mu);
            }
        }
    }
    let mut values: Vec<BigUint> = seen.into_keys().collect();
    values.sort();
    Ok(SubsetReport { values, collision, members_scanned: scanned })
}

/// Rebuilds an increasing sequence from the sorted value set `ys` it is
/// supposed to generate: `Q_n` is the smallest element of `ys` not already
/// produced by members of order below `n`.
pub fn reconstruct_sequence(ys: &[BigUint], fam: &PredecessorFamily) -> Result<Vec<BigUint>, NumerationError> {
    let mut produced: std::collections::HashSet<BigUint> = std::collections::HashSet::new();
    let mut q: Vec<BigUint> = Vec::new();
    let mut members = AscendingIter::new(fam).peekable();
    loop {
        let Some(next) = ys.iter().find(|y| !produced.contains(*y)) else {
            return Ok(q);
        };
        q.push(next.clone());
        let order = q.len() as u64;
        while let Some(mu) = members.peek() {
            let mu = mu.clone()?;
            if mu.order_asc() > order {
                break;
            }
            members.next();
            let mut v = BigUint::zero();
            for (i, d) in mu.iter() {
                v += &q[i as usize - 1] * d;
            }
            produced.insert(v);
        }
    }
}
