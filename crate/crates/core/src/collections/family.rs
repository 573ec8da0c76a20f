//! Predecessor and maximal families: the generators of a collection.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::coeff::{CoeffFn, MAX_DIGIT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("predecessors are defined for n >= 2, got n = {0}")]
    IndexOutOfRange(u64),
    #[error("predecessor {n} has order {order}, expected {}", n - 1)]
    OrderMismatch { n: u64, order: u64 },
    #[error("maximal function {n} has digit 0 at its own index")]
    ZeroLeadingDigit { n: u64 },
    #[error("maximal function {n} shows no support beyond index {after} (scan limit reached)")]
    FiniteSupport { n: u64, after: u64 },
    #[error("digit at index {index} of family member {n} exceeds the 63-bit limit")]
    DigitOverflow { n: u64, index: u64 },
    #[error("family table has no row for n = {0}")]
    TableExhausted(u64),
    #[error("{0}")]
    Rule(String),
}

/// Predecessors below this index are cached in a vector, the rest in a map.
const DENSE_LIMIT: u64 = 1 << 16;

#[derive(Default)]
struct PredMemo {
    dense: Vec<Option<Arc<CoeffFn>>>,
    sparse: HashMap<u64, Arc<CoeffFn>>,
}

impl PredMemo {
    fn get(&self, n: u64) -> Option<Arc<CoeffFn>> {
        if n < DENSE_LIMIT {
            self.dense.get(n as usize).and_then(Clone::clone)
        } else {
            self.sparse.get(&n).cloned()
        }
    }

    /// Stores `d` unless another thread got there first; returns the cached value.
    fn insert(&mut self, n: u64, d: CoeffFn) -> Arc<CoeffFn> {
        if n < DENSE_LIMIT {
            let i = n as usize;
            if self.dense.len() <= i {
                self.dense.resize(i + 1, None);
            }
            Arc::clone(self.dense[i].get_or_insert_with(|| Arc::new(d)))
        } else {
            Arc::clone(self.sparse.entry(n).or_insert_with(|| Arc::new(d)))
        }
    }
}

type PredRule = dyn Fn(u64) -> Result<CoeffFn, FamilyError> + Send + Sync;

struct PredInner {
    name: String,
    rule: Box<PredRule>,
    memo: RwLock<PredMemo>,
}

/// The predecessors `δ^n` (`n ≥ 2`) of an ascending collection.
///
/// Each `δ^n` is computed once by the supplied rule, checked to have order
/// `n − 1`, and cached. Clones share the cache.
#[derive(Clone)]
pub struct PredecessorFamily {
    inner: Arc<PredInner>,
}

impl PredecessorFamily {
    pub fn new<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64) -> Result<CoeffFn, FamilyError> + Send + Sync + 'static,
    {
        PredecessorFamily {
            inner: Arc::new(PredInner {
                name: name.into(),
                rule: Box::new(rule),
                memo: RwLock::new(PredMemo::default()),
            }),
        }
    }

    /// A family given by an infallible rule.
    pub fn from_fn<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64) -> CoeffFn + Send + Sync + 'static,
    {
        Self::new(name, move |n| Ok(rule(n)))
    }

    /// A family given by an explicit table: `rows[0]` is `δ^2`, `rows[1]` is
    /// `δ^3`, and so on. Requests past the table fail with `TableExhausted`.
    pub fn from_table(name: impl Into<String>, rows: Vec<CoeffFn>) -> Self {
        Self::new(name, move |n| rows.get((n - 2) as usize).cloned().ok_or(FamilyError::TableExhausted(n)))
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// The predecessor `δ^n` of the basis function `β^n`.
    pub fn delta(&self, n: u64) -> Result<Arc<CoeffFn>, FamilyError> {
        if n < 2 {
            return Err(FamilyError::IndexOutOfRange(n));
        }
        if let Some(d) = self.inner.memo.read().expect("family memo poisoned").get(n) {
            return Ok(d);
        }
        let d = (self.inner.rule)(n)?;
        if d.order_asc() != n - 1 {
            return Err(FamilyError::OrderMismatch { n, order: d.order_asc() });
        }
        let mut memo = self.inner.memo.write().expect("family memo poisoned");
        Ok(memo.insert(n, d))
    }

    /// Validates `δ^2 … δ^n_max`.
    pub fn validate_upto(&self, n_max: u64) -> Result<(), FamilyError> {
        for n in 2..=n_max {
            self.delta(n)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PredecessorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PredecessorFamily").field("name", &self.inner.name).finish()
    }
}

type DigitRule = dyn Fn(u64, u64) -> u64 + Send + Sync;
type SupportRule = dyn Fn(u64, u64) -> Option<u64> + Send + Sync;
type PeriodRule = dyn Fn(u64) -> (u64, u64) + Send + Sync;

const MEMO_CAP: usize = 1 << 20;

struct MaxInner {
    name: String,
    digit: Box<DigitRule>,
    next_support: Option<Box<SupportRule>>,
    periodic: Option<Box<PeriodRule>>,
    digit_bound: Option<u64>,
    scan_limit: u64,
    validation_horizon: u64,
    memo: RwLock<HashMap<(u64, u64), u64>>,
    validated: RwLock<HashSet<u64>>,
}

/// The maximal functions `β̄^n` (`n ≥ 1`) of a descending collection.
///
/// Each `β̄^n` has infinite support and is accessed digit by digit through
/// [`MaximalFamily::digit`]. Families with very sparse supports should supply
/// a `next_support` rule so scans can jump between nonzero digits.
#[derive(Clone)]
pub struct MaximalFamily {
    inner: Arc<MaxInner>,
}

/// Builder for [`MaximalFamily`].
pub struct MaximalFamilyBuilder {
    name: String,
    digit: Box<DigitRule>,
    next_support: Option<Box<SupportRule>>,
    periodic: Option<Box<PeriodRule>>,
    digit_bound: Option<u64>,
    scan_limit: u64,
    validation_horizon: u64,
}

impl MaximalFamilyBuilder {
    /// Smallest index `j ≥ k` with a nonzero digit in `β̄^n`.
    pub fn next_support<F>(mut self, f: F) -> Self
    where
        F: Fn(u64, u64) -> Option<u64> + Send + Sync + 'static,
    {
        self.next_support = Some(Box::new(f));
        self
    }

    /// Declares that for `n` the digits of `β̄^n` repeat with some period
    /// `P` from some start index `s`: `f(n) = (s, P)`.
    pub fn periodic<F>(mut self, f: F) -> Self
    where
        F: Fn(u64) -> (u64, u64) + Send + Sync + 'static,
    {
        self.periodic = Some(Box::new(f));
        self
    }

    /// Upper bound on every digit of every `β̄^n`.
    pub fn digit_bound(mut self, bound: u64) -> Self {
        self.digit_bound = Some(bound);
        self
    }

    /// Longest run of zeros a linear support scan will cross.
    pub fn scan_limit(mut self, limit: u64) -> Self {
        self.scan_limit = limit;
        self
    }

    /// Horizon up to which infinite support is probed on first access.
    pub fn validation_horizon(mut self, horizon: u64) -> Self {
        self.validation_horizon = horizon;
        self
    }

    pub fn build(self) -> MaximalFamily {
        MaximalFamily {
            inner: Arc::new(MaxInner {
                name: self.name,
                digit: self.digit,
                next_support: self.next_support,
                periodic: self.periodic,
                digit_bound: self.digit_bound,
                scan_limit: self.scan_limit,
                validation_horizon: self.validation_horizon,
                memo: RwLock::new(HashMap::new()),
                validated: RwLock::new(HashSet::new()),
            }),
        }
    }
}

impl MaximalFamily {
    /// Starts a family from its digit rule `(n, k) ↦ β̄^n_k`, consulted only
    /// for `k ≥ n`.
    pub fn builder<F>(name: impl Into<String>, digit: F) -> MaximalFamilyBuilder
    where
        F: Fn(u64, u64) -> u64 + Send + Sync + 'static,
    {
        MaximalFamilyBuilder {
            name: name.into(),
            digit: Box::new(digit),
            next_support: None,
            periodic: None,
            digit_bound: None,
            scan_limit: 4096,
            validation_horizon: 1 << 12,
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn digit_bound(&self) -> Option<u64> {
        self.inner.digit_bound
    }

    /// `(start, period)` of the periodic tail of `β̄^n`, if declared.
    pub fn periodic_from(&self, n: u64) -> Option<(u64, u64)> {
        self.inner.periodic.as_ref().map(|f| f(n))
    }

    fn raw_digit(&self, n: u64, k: u64) -> u64 {
        if k < n {
            return 0;
        }
        if let Some(&d) = self.inner.memo.read().expect("family memo poisoned").get(&(n, k)) {
            return d;
        }
        let d = (self.inner.digit)(n, k);
        let mut memo = self.inner.memo.write().expect("family memo poisoned");
        if memo.len() < MEMO_CAP {
            memo.insert((n, k), d);
        }
        d
    }

    fn raw_next_support(&self, n: u64, k: u64) -> Option<u64> {
        let k = k.max(n);
        if let Some(f) = &self.inner.next_support {
            return f(n, k);
        }
        (k..=k.saturating_add(self.inner.scan_limit)).find(|&j| self.raw_digit(n, j) > 0)
    }

    fn validate(&self, n: u64) -> Result<(), FamilyError> {
        if self.inner.validated.read().expect("family memo poisoned").contains(&n) {
            return Ok(());
        }
        if n == 0 {
            return Err(FamilyError::IndexOutOfRange(0));
        }
        let lead = self.raw_digit(n, n);
        if lead == 0 {
            return Err(FamilyError::ZeroLeadingDigit { n });
        }
        let mut probe = n;
        loop {
            let found = self.raw_next_support(n, probe + 1).ok_or(FamilyError::FiniteSupport { n, after: probe })?;
            let d = self.raw_digit(n, found);
            if d > MAX_DIGIT {
                return Err(FamilyError::DigitOverflow { n, index: found });
            }
            if probe >= self.inner.validation_horizon || found >= self.inner.validation_horizon {
                break;
            }
            probe = probe.saturating_mul(2).max(found);
        }
        if lead > MAX_DIGIT {
            return Err(FamilyError::DigitOverflow { n, index: n });
        }
        self.inner.validated.write().expect("family memo poisoned").insert(n);
        Ok(())
    }

    /// The digit `β̄^n_k` (zero for `k < n`).
    pub fn digit(&self, n: u64, k: u64) -> Result<u64, FamilyError> {
        self.validate(n)?;
        Ok(self.raw_digit(n, k))
    }

    /// Smallest index `j ≥ k` with `β̄^n_j > 0`.
    pub fn next_support(&self, n: u64, k: u64) -> Result<u64, FamilyError> {
        self.validate(n)?;
        self.raw_next_support(n, k).ok_or(FamilyError::FiniteSupport { n, after: k })
    }

    /// `β̄^n` restricted to the indices `1..=horizon`.
    pub fn truncated(&self, n: u64, horizon: u64) -> Result<CoeffFn, FamilyError> {
        let mut terms = Vec::new();
        let mut k = n;
        while k <= horizon {
            let j = self.next_support(n, k)?;
            if j > horizon {
                break;
            }
            terms.push((j, self.raw_digit(n, j)));
            k = j + 1;
        }
        Ok(CoeffFn::from_sorted_unchecked(terms))
    }
}

impl fmt::Debug for MaximalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MaximalFamily").field("name", &self.inner.name).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predecessor_order_is_validated() {
        let bad = PredecessorFamily::from_fn("bad", |n| CoeffFn::basis(n).unwrap());
        assert_eq!(bad.delta(3), Err(FamilyError::OrderMismatch { n: 3, order: 3 }));
        let good = PredecessorFamily::from_fn("good", |n| CoeffFn::basis(n - 1).unwrap());
        assert_eq!(*good.delta(5).unwrap(), CoeffFn::basis(4).unwrap());
        assert_eq!(good.delta(1), Err(FamilyError::IndexOutOfRange(1)));
    }

    #[test]
    fn table_family_runs_out() {
        let fam = PredecessorFamily::from_table("t", vec![CoeffFn::basis(1).unwrap()]);
        assert!(fam.delta(2).is_ok());
        assert_eq!(fam.delta(3), Err(FamilyError::TableExhausted(3)));
    }

    #[test]
    fn maximal_family_validation() {
        let finite = MaximalFamily::builder("finite", |n, k| u64::from(k == n)).scan_limit(64).build();
        assert!(matches!(finite.digit(2, 2), Err(FamilyError::FiniteSupport { .. })));
        let lead = MaximalFamily::builder("lead", |n, k| u64::from(k > n)).build();
        assert_eq!(lead.digit(1, 5), Err(FamilyError::ZeroLeadingDigit { n: 1 }));
        let ones = MaximalFamily::builder("ones", |_, _| 1).digit_bound(1).build();
        assert_eq!(ones.digit(3, 2).unwrap(), 0);
        assert_eq!(ones.next_support(3, 1).unwrap(), 3);
        assert_eq!(ones.truncated(3, 5).unwrap(), CoeffFn::from_digits(&[0, 0, 1, 1, 1]));
    }
}
