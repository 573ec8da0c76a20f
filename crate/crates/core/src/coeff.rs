//! Finitely supported coefficient functions, index intervals and the two
//! lexicographic orders.
//!
//! A [`CoeffFn`] is a sparse map from positive indices to positive digits.
//! Absent indices carry digit 0, so the zero function has empty support.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Largest digit a coefficient function may hold.
pub const MAX_DIGIT: u64 = i64::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("index 0 is outside the index domain (indices start at 1)")]
    ZeroIndex,
    #[error("digit {digit} at index {index} exceeds the 63-bit digit limit")]
    DigitOverflow { index: u64, digit: u64 },
    #[error("index {0} appears more than once")]
    DuplicateIndex(u64),
    #[error("supports overlap at index {0}")]
    Overlap(u64),
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: u64, hi: u64 },
    #[error("cannot parse coefficient function: {0}")]
    Parse(String),
}

/// An index, or the `+∞` sentinel.
///
/// Finite values sort before `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexBound {
    Finite(u64),
    Infinite,
}

impl IndexBound {
    pub fn finite(self) -> Option<u64> {
        match self {
            IndexBound::Finite(n) => Some(n),
            IndexBound::Infinite => None,
        }
    }
}

impl fmt::Display for IndexBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexBound::Finite(n) => write!(f, "{n}"),
            IndexBound::Infinite => f.write_str("inf"),
        }
    }
}

/// A nonempty interval of indices `[lo, hi]`, where `hi` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexInterval {
    lo: u64,
    hi: IndexBound,
}

impl IndexInterval {
    /// The closed interval `[lo, hi]`.
    pub fn closed(lo: u64, hi: u64) -> Result<Self, CoeffError> {
        if lo == 0 {
            return Err(CoeffError::ZeroIndex);
        }
        if lo > hi {
            return Err(CoeffError::EmptyInterval { lo, hi });
        }
        Ok(IndexInterval { lo, hi: IndexBound::Finite(hi) })
    }

    /// The half-line `[lo, ∞)`.
    pub fn from(lo: u64) -> Result<Self, CoeffError> {
        if lo == 0 {
            return Err(CoeffError::ZeroIndex);
        }
        Ok(IndexInterval { lo, hi: IndexBound::Infinite })
    }

    pub fn point(n: u64) -> Result<Self, CoeffError> {
        Self::closed(n, n)
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> IndexBound {
        self.hi
    }

    pub fn contains(&self, i: u64) -> bool {
        i >= self.lo && IndexBound::Finite(i) <= self.hi
    }
}

impl fmt::Display for IndexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            IndexBound::Finite(h) => write!(f, "[{}, {}]", self.lo, h),
            IndexBound::Infinite => write!(f, "[{}, inf)", self.lo),
        }
    }
}

/// A coefficient function with finite support.
///
/// Stored as `(index, digit)` pairs sorted by index with every digit
/// nonzero. Equality is structural, so two functions are equal exactly when
/// they agree at every index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffFn {
    terms: Vec<(u64, u64)>,
}

impl CoeffFn {
    pub fn zero() -> Self {
        CoeffFn { terms: Vec::new() }
    }

    /// The basis function with a single digit 1 at index `i`.
    ///
    /// ```
    /// use zeckgen::CoeffFn;
    /// let b = CoeffFn::basis(7).unwrap();
    /// assert_eq!(b.order_asc(), 7);
    /// assert!(CoeffFn::basis(0).is_err());
    /// ```
    pub fn basis(i: u64) -> Result<Self, CoeffError> {
        if i == 0 {
            return Err(CoeffError::ZeroIndex);
        }
        Ok(CoeffFn { terms: vec![(i, 1)] })
    }

    /// Builds a function from `(index, digit)` pairs in any order.
    /// Zero digits are dropped; repeated indices are rejected.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self, CoeffError> {
        let mut terms: Vec<(u64, u64)> = Vec::new();
        for (i, d) in pairs {
            if i == 0 {
                return Err(CoeffError::ZeroIndex);
            }
            if d > MAX_DIGIT {
                return Err(CoeffError::DigitOverflow { index: i, digit: d });
            }
            terms.push((i, d));
        }
        terms.sort_unstable_by_key(|&(i, _)| i);
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CoeffError::DuplicateIndex(w[0].0));
            }
        }
        terms.retain(|&(_, d)| d != 0);
        Ok(CoeffFn { terms })
    }

    /// Builds a function from a dense digit list whose first entry is the
    /// digit at index 1, matching the list notation `(μ_1, μ_2, …)`.
    ///
    /// Panics if a digit exceeds [`MAX_DIGIT`].
    pub fn from_digits(digits: &[u64]) -> Self {
        let terms = digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(k, &d)| {
                assert!(d <= MAX_DIGIT, "digit {d} exceeds the 63-bit digit limit");
                (k as u64 + 1, d)
            })
            .collect();
        CoeffFn { terms }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(u64, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|&(i, d)| i >= 1 && (1..=MAX_DIGIT).contains(&d)));
        CoeffFn { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn digit(&self, i: u64) -> u64 {
        match self.terms.binary_search_by_key(&i, |&(k, _)| k) {
            Ok(pos) => self.terms[pos].1,
            Err(_) => 0,
        }
    }

    /// Number of nonzero digits.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero `(index, digit)` pairs in increasing index order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + ExactSizeIterator + '_ {
        self.terms.iter().copied()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.terms.iter().map(|&(i, _)| i)
    }

    /// Largest support index, 0 for the zero function.
    pub fn order_asc(&self) -> u64 {
        self.terms.last().map_or(0, |&(i, _)| i)
    }

    /// Smallest support index, `Infinite` for the zero function.
    pub fn order_desc(&self) -> IndexBound {
        self.terms.first().map_or(IndexBound::Infinite, |&(i, _)| IndexBound::Finite(i))
    }

    /// Keeps only the digits whose index lies in `j`.
    pub fn restrict(&self, j: &IndexInterval) -> Self {
        let terms = self.terms.iter().copied().filter(|&(i, _)| j.contains(i)).collect();
        CoeffFn { terms }
    }

    /// Keeps the digits at indices `lo..=hi`; empty when `lo > hi`.
    pub fn restrict_range(&self, lo: u64, hi: u64) -> Self {
        let start = self.terms.partition_point(|&(i, _)| i < lo);
        let end = self.terms.partition_point(|&(i, _)| i <= hi);
        if start >= end {
            return CoeffFn::zero();
        }
        CoeffFn { terms: self.terms[start..end].to_vec() }
    }

    /// Sum of two functions with disjoint supports.
    pub fn union(&self, other: &CoeffFn) -> Result<Self, CoeffError> {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => {
                        terms.push(x);
                        a.next();
                    }
                    Ordering::Greater => {
                        terms.push(y);
                        b.next();
                    }
                    Ordering::Equal => return Err(CoeffError::Overlap(x.0)),
                },
                (Some(&&x), None) => {
                    terms.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    terms.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ok(CoeffFn { terms })
    }

    /// Returns a copy with the digit at `i` replaced by `d`.
    pub fn with_digit(&self, i: u64, d: u64) -> Result<Self, CoeffError> {
        if i == 0 {
            return Err(CoeffError::ZeroIndex);
        }
        if d > MAX_DIGIT {
            return Err(CoeffError::DigitOverflow { index: i, digit: d });
        }
        let mut out = self.clone();
        out.set(i, d);
        Ok(out)
    }

    pub(crate) fn set(&mut self, i: u64, d: u64) {
        match self.terms.binary_search_by_key(&i, |&(k, _)| k) {
            Ok(pos) if d == 0 => {
                self.terms.remove(pos);
            }
            Ok(pos) => self.terms[pos].1 = d,
            Err(pos) if d != 0 => self.terms.insert(pos, (i, d)),
            Err(_) => {}
        }
    }

    /// Dense digits at indices `1..=len`.
    pub fn to_dense(&self, len: u64) -> Vec<u64> {
        let mut out = vec![0; len as usize];
        for &(i, d) in &self.terms {
            if i <= len {
                out[i as usize - 1] = d;
            }
        }
        out
    }

    /// Ascending lexicographic comparison: decided at the largest index
    /// where the two functions differ.
    ///
    /// ```
    /// use std::cmp::Ordering;
    /// use zeckgen::CoeffFn;
    /// let a = CoeffFn::from_digits(&[1, 2, 10, 3, 7]);
    /// let b = CoeffFn::from_digits(&[1, 3, 1, 4, 7]);
    /// assert_eq!(a.cmp_asc(&b), Ordering::Less);
    /// ```
    pub fn cmp_asc(&self, other: &CoeffFn) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(i, x)), Some(&(j, y))) => {
                    if i != j {
                        // The side holding the larger index has a nonzero digit
                        // where the other has zero.
                        return i.cmp(&j);
                    }
                    if x != y {
                        return x.cmp(&y);
                    }
                }
            }
        }
    }

    /// Descending lexicographic comparison: decided at the smallest index
    /// where the two functions differ.
    pub fn cmp_desc(&self, other: &CoeffFn) -> Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(i, x)), Some(&(j, y))) => {
                    if i != j {
                        return j.cmp(&i);
                    }
                    if x != y {
                        return x.cmp(&y);
                    }
                }
            }
        }
    }

    /// Renders the canonical sparse text form `i1:d1,i2:d2,…`, or `0` for
    /// the zero function.
    pub fn to_sparse_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, d)| format!("{i}:{d}")).collect();
        parts.join(",")
    }

    /// Renders the term list: indices from largest to smallest, with `*d`
    /// appended when the digit `d` exceeds 1 (`10,5,3` or `8*2,1`).
    pub fn to_term_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> =
            self.terms.iter().rev().map(|&(i, d)| if d == 1 { i.to_string() } else { format!("{i}*{d}") }).collect();
        parts.join(",")
    }

    /// Parses the term-list notation produced by [`CoeffFn::to_term_string`].
    pub fn parse_terms(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(CoeffFn::zero());
        }
        let mut pairs = Vec::new();
        let mut prev: Option<u64> = None;
        for tok in s.split(',') {
            let tok = tok.trim();
            let (i, d) = match tok.split_once('*') {
                Some((i, d)) => (parse_u64(i)?, parse_u64(d)?),
                None => (parse_u64(tok)?, 1),
            };
            if let Some(p) = prev {
                if i >= p {
                    return Err(CoeffError::Parse(format!("term indices must strictly decrease, found {i} after {p}")));
                }
            }
            prev = Some(i);
            pairs.push((i, d));
        }
        CoeffFn::from_pairs(pairs)
    }
}

fn parse_u64(s: &str) -> Result<u64, CoeffError> {
    s.trim().parse::<u64>().map_err(|e| CoeffError::Parse(format!("{s:?}: {e}")))
}

impl FromStr for CoeffFn {
    type Err = CoeffError;

    /// Parses the sparse form `i1:d1,i2:d2,…` with strictly increasing
    /// indices. `0` and the empty string denote the zero function.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(CoeffFn::zero());
        }
        let mut pairs = Vec::new();
        let mut prev = 0u64;
        for tok in s.split(',') {
            let (i, d) =
                tok.split_once(':').ok_or_else(|| CoeffError::Parse(format!("expected index:digit, found {tok:?}")))?;
            let (i, d) = (parse_u64(i)?, parse_u64(d)?);
            if i <= prev {
                return Err(CoeffError::Parse(format!("indices must strictly increase, found {i} after {prev}")));
            }
            prev = i;
            pairs.push((i, d));
        }
        CoeffFn::from_pairs(pairs)
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sparse_string())
    }
}

impl fmt::Debug for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffFn({})", self.to_sparse_string())
    }
}

/// Descending comparison of two lazily defined digit sequences over the
/// indices `lo..=horizon`.
pub fn cmp_desc_upto<A, B>(a: A, b: B, lo: u64, horizon: u64) -> Ordering
where
    A: Fn(u64) -> u64,
    B: Fn(u64) -> u64,
{
    for k in lo..=horizon {
        match a(k).cmp(&b(k)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(d: &[u64]) -> CoeffFn {
        CoeffFn::from_digits(d)
    }

    #[test]
    fn basis_and_orders() {
        assert_eq!(CoeffFn::basis(1).unwrap().to_sparse_string(), "1:1");
        assert_eq!(CoeffFn::basis(7).unwrap().order_asc(), 7);
        assert_eq!(CoeffFn::basis(0), Err(CoeffError::ZeroIndex));
        assert_eq!(CoeffFn::zero().order_asc(), 0);
        assert_eq!(CoeffFn::zero().order_desc(), IndexBound::Infinite);
        let g = CoeffFn::from_pairs([(3, 1), (9, 2)]).unwrap();
        assert_eq!(g.order_desc(), IndexBound::Finite(3));
        assert_eq!(CoeffFn::from_pairs([(1, 1), (4, 2)]).unwrap().order_asc(), 4);
        assert_eq!(CoeffFn::basis(2).unwrap().order_desc(), IndexBound::Finite(2));
    }

    #[test]
    fn restriction() {
        let g = CoeffFn::from_pairs([(1, 1), (2, 2), (5, 3)]).unwrap();
        assert_eq!(g.restrict(&IndexInterval::closed(1, 2).unwrap()), f(&[1, 2]));
        assert_eq!(g.restrict(&IndexInterval::from(3).unwrap()), CoeffFn::from_pairs([(5, 3)]).unwrap());
        assert!(CoeffFn::zero().restrict(&IndexInterval::closed(1, 10).unwrap()).is_zero());
        assert_eq!(g.restrict_range(2, 5), CoeffFn::from_pairs([(2, 2), (5, 3)]).unwrap());
        assert!(g.restrict_range(6, 5).is_zero());
    }

    #[test]
    fn lexicographic_orders() {
        assert_eq!(f(&[1, 2, 10, 3, 7]).cmp_asc(&f(&[1, 3, 1, 4, 7])), Ordering::Less);
        assert_eq!(CoeffFn::zero().cmp_asc(&CoeffFn::basis(1).unwrap()), Ordering::Less);
        let g = f(&[4, 0, 2]);
        assert_eq!(g.cmp_asc(&g), Ordering::Equal);

        assert_eq!(f(&[1, 2, 10, 5]).cmp_desc(&f(&[1, 3, 1, 10])), Ordering::Less);
        assert_eq!(CoeffFn::zero().cmp_desc(&CoeffFn::basis(3).unwrap()), Ordering::Less);
        assert_eq!(CoeffFn::basis(2).unwrap().cmp_desc(&CoeffFn::basis(3).unwrap()), Ordering::Greater);
    }

    #[test]
    fn lazy_desc_compare() {
        let ord = cmp_desc_upto(|k| k % 2, |k| if k == 5 { 0 } else { k % 2 }, 1, 10);
        assert_eq!(ord, Ordering::Greater);
        assert_eq!(cmp_desc_upto(|_| 1, |_| 1, 1, 50), Ordering::Equal);
    }

    #[test]
    fn text_forms() {
        let g = CoeffFn::from_pairs([(3, 1), (5, 1), (10, 1)]).unwrap();
        assert_eq!(g.to_term_string(), "10,5,3");
        assert_eq!(CoeffFn::parse_terms("10,5,3").unwrap(), g);
        assert_eq!("3:1,5:1,10:1".parse::<CoeffFn>().unwrap(), g);
        assert_eq!("0".parse::<CoeffFn>().unwrap(), CoeffFn::zero());
        assert!("5:1,3:1".parse::<CoeffFn>().is_err());
        assert!("0:1".parse::<CoeffFn>().is_err());
        assert!("3,5".parse::<CoeffFn>().is_err());
        assert!(CoeffFn::parse_terms("3,5").is_err());
        let h = CoeffFn::from_pairs([(1, 1), (8, 2)]).unwrap();
        assert_eq!(h.to_term_string(), "8*2,1");
        assert_eq!(CoeffFn::parse_terms("8*2,1").unwrap(), h);
        assert!(format!("1:{}", u64::MAX).parse::<CoeffFn>().is_err());
    }

    #[test]
    fn union_rejects_overlap() {
        let a = f(&[1, 0, 1]);
        let b = CoeffFn::basis(2).unwrap();
        assert_eq!(a.union(&b).unwrap(), f(&[1, 1, 1]));
        assert_eq!(a.union(&CoeffFn::basis(3).unwrap()), Err(CoeffError::Overlap(3)));
    }
}
