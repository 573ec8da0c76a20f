//! Descending numeration on the unit interval.
//!
//! Numbers are [`Real`]s: exact rationals, or rationals kept rounded to a
//! fixed number of decimal places. Decreasing fundamental sequences are
//! [`RealSeq`]s. Root finding and the dominance test live in [`root`];
//! greedy expansion and the maximal-sum identity check in [`expansion`].

pub mod expansion;
pub mod root;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::collections::FamilyError;

pub use expansion::{
    eval_expansion, expand_real, is_greedy_maximal, verify_maximal_identity, Expansion, IdentityReport, IdentityStatus,
    RealBlock, StopReason, StopRule, TailModel,
};
pub use root::{
    dominance_criterion, geometric_fundamental, l_polynomial, lead_tail_polynomial, positive_root, positive_root_poly,
    Dominance, PolyCoeffs, RootBracket,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error("{0} is outside the open unit interval")]
    Domain(String),
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
    #[error("sequence is not decreasing in (0, 1) at index {index}")]
    NotDecreasing { index: u64 },
    #[error("no polynomial sign change on the bracket")]
    NoSignChange,
    #[error("invalid polynomial coefficients: {0}")]
    InvalidPolynomial(String),
    #[error("block at index {index} reaches the previous term of the sequence; family and sequence disagree")]
    Integrity { index: u64 },
    #[error("block walk from index {index} exceeded {limit} steps")]
    WalkLimit { index: u64, limit: u64 },
    #[error("no sequence term at or below the target before index overflow")]
    LocateOverflow,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A real number held as a rational. With a scale `s` the value is kept
/// rounded to `s` decimal places after every operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Real {
    value: BigRational,
    scale: Option<u32>,
}

fn ten_pow(s: u32) -> BigInt {
    Pow::pow(BigInt::from(10u32), s)
}

fn round_to(v: &BigRational, s: u32) -> BigRational {
    let m = ten_pow(s);
    let scaled = (v * BigRational::from_integer(m.clone())).round();
    scaled / BigRational::from_integer(m)
}

impl Real {
    pub fn exact(value: BigRational) -> Self {
        Real { value, scale: None }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Real::exact(BigRational::new(num.into(), den.into()))
    }

    /// Rounds `value` to `scale` decimal places.
    pub fn approx(value: &BigRational, scale: u32) -> Self {
        Real { value: round_to(value, scale), scale: Some(scale) }
    }

    pub fn zero() -> Self {
        Real::exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Real::exact(BigRational::one())
    }

    /// `10^{-s}` as an exact value.
    pub fn ten_to_minus(s: u32) -> Self {
        Real::exact(BigRational::new(BigInt::one(), ten_pow(s)))
    }

    pub fn is_exact(&self) -> bool {
        self.scale.is_none()
    }

    pub fn scale(&self) -> Option<u32> {
        self.scale
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
    }

    fn combine(&self, other: &Real, value: BigRational) -> Real {
        let scale = match (self.scale, other.scale) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match scale {
            Some(s) => Real::approx(&value, s),
            None => Real::exact(value),
        }
    }

    pub fn add(&self, other: &Real) -> Real {
        self.combine(other, &self.value + &other.value)
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.combine(other, &self.value - &other.value)
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.combine(other, &self.value * &other.value)
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Real) -> Real {
        self.combine(other, &self.value / &other.value)
    }

    pub fn mul_u64(&self, d: u64) -> Real {
        Real { value: &self.value * BigRational::from_integer(d.into()), scale: self.scale }
    }

    pub fn abs(&self) -> Real {
        Real { value: self.value.abs(), scale: self.scale }
    }

    /// `self^k` by squaring, rounding at each step in scaled mode.
    pub fn pow(&self, mut k: u64) -> Real {
        let mut base = self.clone();
        let mut acc = Real { value: BigRational::one(), scale: self.scale };
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `⌊self / other⌋` for nonnegative `self` and positive `other`.
    pub fn floor_div(&self, other: &Real) -> BigUint {
        let q = (&self.value / &other.value).floor().to_integer();
        q.to_biguint().unwrap_or_default()
    }

    /// Decimal rendering with `digits` places, truncated toward zero.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let m = ten_pow(digits);
        let scaled = (&self.value * BigRational::from_integer(m)).trunc().to_integer();
        let neg = scaled.sign() == Sign::Minus;
        let s = scaled.abs().to_string();
        let s =
            if s.len() <= digits as usize { format!("{}{s}", "0".repeat(digits as usize + 1 - s.len())) } else { s };
        let (int, frac) = s.split_at(s.len() - digits as usize);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl FromStr for Real {
    type Err = RealError;

    /// Accepts `p/q`, an integer, or a decimal `a.b`, all read exactly.
    fn from_str(s: &str) -> Result<Self, RealError> {
        let t = s.trim();
        let err = || RealError::Parse(s.to_string());
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Real::exact(BigRational::new(p, q)));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| err())?;
        let mut v = BigRational::new(digits, ten_pow(frac.len() as u32));
        if neg {
            v = -v;
        }
        Ok(Real::exact(v))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scale {
            Some(s) => f.write_str(&self.to_decimal_string(s)),
            None if self.value.is_integer() => write!(f, "{}", self.value.numer()),
            None => write!(f, "{}/{}", self.value.numer(), self.value.denom()),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scale {
            Some(s) => write!(f, "Real({} @{s})", self.to_decimal_string(s.min(20))),
            None => write!(f, "Real({self})"),
        }
    }
}

type TermFn = dyn Fn(u64) -> Real + Send + Sync;

const MEMO_CAP: usize = 1 << 16;

struct SeqInner {
    name: String,
    term: Box<TermFn>,
    overrides: HashMap<u64, Real>,
    memo: RwLock<HashMap<u64, Real>>,
}

/// A decreasing sequence `Q_1 > Q_2 > ⋯` in `(0, 1)` with `Q_0 = 1`.
///
/// Terms come from a rule and are cached; clones share the cache.
#[derive(Clone)]
pub struct RealSeq {
    inner: Arc<SeqInner>,
}

impl RealSeq {
    /// Builds from a term rule for `k ≥ 1`.
    pub fn from_fn<F>(name: impl Into<String>, term: F) -> Self
    where
        F: Fn(u64) -> Real + Send + Sync + 'static,
    {
        RealSeq {
            inner: Arc::new(SeqInner {
                name: name.into(),
                term: Box::new(term),
                overrides: HashMap::new(),
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// `Q_k = r^k`.
    pub fn geometric(name: impl Into<String>, ratio: Real) -> Self {
        RealSeq::from_fn(name, move |k| ratio.pow(k))
    }

    /// `Q_k = 1/(k+1)`.
    pub fn harmonic() -> Self {
        RealSeq::from_fn("harmonic", |k| Real::exact(BigRational::new(BigInt::one(), BigInt::from(k) + 1)))
    }

    /// `Q_{gN+r} = head_r · ratio^g` for `1 ≤ r ≤ N`.
    pub fn block_geometric(name: impl Into<String>, head: Vec<Real>, ratio: Real) -> Self {
        let n = head.len() as u64;
        RealSeq::from_fn(name, move |k| {
            let (g, r) = ((k - 1) / n, (k - 1) % n);
            head[r as usize].mul(&ratio.pow(g))
        })
    }

    /// The block system with `(Q_1, Q_2, Q_3) = (3/7, 2/7, 1/7)` and
    /// `Q_{k+3} = Q_k / 7`.
    pub fn sevenths() -> Self {
        RealSeq::block_geometric(
            "sevenths",
            vec![Real::ratio(3, 7), Real::ratio(2, 7), Real::ratio(1, 7)],
            Real::ratio(1, 7),
        )
    }

    /// A copy with term `k` replaced.
    pub fn with_term(&self, k: u64, value: Real) -> Self {
        let base = self.clone();
        let mut overrides = self.inner.overrides.clone();
        overrides.insert(k, value);
        RealSeq {
            inner: Arc::new(SeqInner {
                name: format!("{}*", self.inner.name),
                term: Box::new(move |j| base.term(j)),
                overrides,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// `Q_k`, with `Q_0 = 1`.
    pub fn term(&self, k: u64) -> Real {
        if let Some(v) = self.inner.overrides.get(&k) {
            return v.clone();
        }
        if k == 0 {
            return Real::one();
        }
        if let Some(v) = self.inner.memo.read().expect("sequence memo poisoned").get(&k) {
            return v.clone();
        }
        let v = (self.inner.term)(k);
        let mut memo = self.inner.memo.write().expect("sequence memo poisoned");
        if memo.len() < MEMO_CAP {
            memo.insert(k, v.clone());
        }
        v
    }

    /// Checks `1 > Q_1 > ⋯ > Q_upto > 0`.
    pub fn check_decreasing(&self, upto: u64) -> Result<(), RealError> {
        let mut prev = Real::one();
        for k in 1..=upto {
            let q = self.term(k);
            if !q.is_positive() || q >= prev {
                return Err(RealError::NotDecreasing { index: k });
            }
            prev = q;
        }
        Ok(())
    }

    /// Smallest `n ≥ 1` with `Q_n ≤ x`, so that `Q_n ≤ x < Q_{n−1}` for
    /// `x < 1`.
    pub fn locate(&self, x: &Real) -> Result<u64, RealError> {
        if !x.is_positive() {
            return Err(RealError::Domain(x.to_string()));
        }
        let mut hi = 1u64;
        while self.term(hi) > *x {
            hi = hi.checked_mul(2).ok_or(RealError::LocateOverflow)?;
        }
        let mut lo = hi / 2;
        // invariant: Q_lo > x (or lo = 0), Q_hi <= x
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.term(mid) <= *x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

impl fmt::Debug for RealSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealSeq").field("name", &self.inner.name).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let x: Real = "0.125".parse().unwrap();
        assert_eq!(x, Real::ratio(1, 8));
        assert_eq!("3/12".parse::<Real>().unwrap(), Real::ratio(1, 4));
        assert_eq!(Real::ratio(1, 3).to_decimal_string(5), "0.33333");
        assert_eq!(Real::ratio(-5, 2).to_decimal_string(2), "-2.50");
        assert_eq!(Real::ratio(1, 3).to_string(), "1/3");
        assert!("1/0".parse::<Real>().is_err());
        assert!("abc".parse::<Real>().is_err());
        assert!(".".parse::<Real>().is_err());
    }

    #[test]
    fn scaled_arithmetic_rounds() {
        let third = Real::approx(&BigRational::new(1.into(), 3.into()), 4);
        assert_eq!(third.to_string(), "0.3333");
        let sum = third.add(&Real::ratio(1, 3));
        assert_eq!(sum.scale(), Some(4));
        assert_eq!(sum.to_string(), "0.6666");
        assert_eq!(Real::approx(&BigRational::new(2.into(), 3.into()), 4).to_string(), "0.6667");
    }

    #[test]
    fn locate_brackets() {
        let h = RealSeq::harmonic();
        assert_eq!(h.locate(&Real::ratio(1, 3)).unwrap(), 2);
        assert_eq!(h.locate(&Real::ratio(2, 5)).unwrap(), 2);
        assert_eq!(h.locate(&Real::ratio(1, 1000)).unwrap(), 999);
        assert!(h.locate(&Real::zero()).is_err());
        assert!(RealSeq::sevenths().check_decreasing(30).is_ok());
        let bumped = h.with_term(3, Real::ratio(1, 2));
        assert_eq!(bumped.check_decreasing(5), Err(RealError::NotDecreasing { index: 3 }));
    }
}
