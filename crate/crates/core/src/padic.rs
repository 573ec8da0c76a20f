//! Fixed-precision p-adic integers and decreasing sequences in them.
//!
//! Everything is computed modulo `p^K`. A residue that is zero modulo `p^K`
//! has valuation `K` and is flagged as below precision.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::coeff::CoeffFn;
use crate::collections::{decompose_asc, AscendingIter, CollectionError, PredecessorFamily};
use crate::integer::Collision;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("mismatched primes or precisions")]
    Mismatch,
    #[error("valuations must increase strictly; term {index} breaks this")]
    NotDecreasing { index: u64 },
    #[error("term {index} is not materialized (sequence has {len} terms)")]
    OutOfRange { index: u64, len: u64 },
    #[error("digit {digit} at index {index} is not below p = {p}")]
    DigitTooLarge { index: u64, digit: u64, p: u64 },
    #[error("residue is not representable: {0}")]
    NotRepresentable(String),
    #[error("decoded digits are not a member (mismatch at index {witness})")]
    NotInCollection { witness: u64, digits: CoeffFn },
    #[error("seed does not give a simple root modulo p")]
    Lifting,
    #[error("no simple root of the polynomial modulo {0}")]
    NoRoot(u64),
    #[error(transparent)]
    Collection(#[from] CollectionError),
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A p-adic integer known modulo `p^K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    p: u64,
    k: u32,
    residue: BigUint,
    valuation: u32,
}

fn modulus(p: u64, k: u32) -> BigUint {
    Pow::pow(BigUint::from(p), k)
}

impl PadicApprox {
    /// Reduces `value` modulo `p^K`. `p` is assumed prime.
    pub fn new(p: u64, k: u32, value: &BigInt) -> Self {
        let m = BigInt::from(modulus(p, k));
        let residue = value.mod_floor(&m).to_biguint().expect("reduced residue is nonnegative");
        let valuation = valuation_of(&residue, p, k);
        PadicApprox { p, k, residue, valuation }
    }

    pub fn from_u64(p: u64, k: u32, value: u64) -> Self {
        PadicApprox::new(p, k, &BigInt::from(value))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    /// `min(ord_p, K)`.
    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    /// Zero modulo `p^K`.
    pub fn is_below_precision(&self) -> bool {
        self.valuation == self.k
    }

    /// `x / p^v mod p`, the leading p-adic digit. Zero below precision.
    pub fn leading_unit_digit(&self) -> u64 {
        if self.is_below_precision() {
            return 0;
        }
        let shifted = &self.residue / Pow::pow(BigUint::from(self.p), self.valuation);
        (shifted % self.p).to_u64().expect("digit below p")
    }

    fn check(&self, other: &PadicApprox) {
        assert!(self.p == other.p && self.k == other.k, "p-adic operands with different p or K");
    }

    fn lift(&self, v: BigInt) -> Self {
        PadicApprox::new(self.p, self.k, &v)
    }

    pub fn add(&self, other: &PadicApprox) -> Self {
        self.check(other);
        self.lift(BigInt::from(&self.residue + &other.residue))
    }

    pub fn sub(&self, other: &PadicApprox) -> Self {
        self.check(other);
        self.lift(BigInt::from(self.residue.clone()) - BigInt::from(other.residue.clone()))
    }

    pub fn mul(&self, other: &PadicApprox) -> Self {
        self.check(other);
        self.lift(BigInt::from(&self.residue * &other.residue))
    }

    pub fn mul_u64(&self, d: u64) -> Self {
        self.lift(BigInt::from(&self.residue * d))
    }

    pub fn pow(&self, e: u64) -> Self {
        let m = modulus(self.p, self.k);
        self.lift(BigInt::from(self.residue.modpow(&BigUint::from(e), &m)))
    }
}

fn valuation_of(residue: &BigUint, p: u64, k: u32) -> u32 {
    if residue.is_zero() {
        return k;
    }
    let mut v = 0;
    let mut r = residue.clone();
    while (&r % p).is_zero() {
        r /= p;
        v += 1;
    }
    v
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.k)
    }
}

impl fmt::Debug for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicApprox({self}, v={})", self.valuation)
    }
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

fn eval_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Lifts a simple root `seed` of `c_0 + c_1 x + ⋯` modulo `p` to a root
/// modulo `p^K` by Newton iteration.
pub fn hensel_root(coeffs: &[BigInt], p: u64, k: u32, seed: u64) -> Result<PadicApprox, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    if k == 0 {
        return Err(PadicError::ZeroPrecision);
    }
    let pb = BigInt::from(p);
    let m = BigInt::from(modulus(p, k));
    let df = derivative(coeffs);
    let mut x = BigInt::from(seed);
    if !eval_poly(coeffs, &x).mod_floor(&pb).is_zero() || eval_poly(&df, &x).mod_floor(&pb).is_zero() {
        return Err(PadicError::Lifting);
    }
    let mut precision = 1u32;
    while precision < k {
        precision = (2 * precision).min(k);
        let inv = inverse_mod(&eval_poly(&df, &x), &m).ok_or(PadicError::Lifting)?;
        x = (&x - eval_poly(coeffs, &x) * inv).mod_floor(&m);
    }
    debug_assert!(eval_poly(coeffs, &x).mod_floor(&m).is_zero());
    Ok(PadicApprox::new(p, k, &x))
}

/// A decreasing sequence `Q_1, …, Q_n` in `Z_p`: valuations increase
/// strictly until they reach the precision.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicSeq {
    name: String,
    p: u64,
    k: u32,
    terms: Vec<PadicApprox>,
}

impl PadicSeq {
    /// Validates primality and decreasing valuations.
    pub fn new(name: impl Into<String>, p: u64, k: u32, terms: Vec<PadicApprox>) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if k == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        if terms.iter().any(|t| t.p != p || t.k != k) {
            return Err(PadicError::Mismatch);
        }
        for (i, w) in terms.windows(2).enumerate() {
            if w[0].valuation() >= w[1].valuation() && !w[0].is_below_precision() {
                return Err(PadicError::NotDecreasing { index: i as u64 + 2 });
            }
        }
        Ok(PadicSeq { name: name.into(), p, k, terms })
    }

    /// Builds `n` terms from a rule `k ↦ Q_k` over the integers.
    pub fn from_fn<F>(name: impl Into<String>, p: u64, k: u32, n: u64, f: F) -> Result<Self, PadicError>
    where
        F: Fn(u64) -> BigInt,
    {
        let terms = (1..=n).map(|i| PadicApprox::new(p, k, &f(i))).collect();
        PadicSeq::new(name, p, k, terms)
    }

    /// `Q_k = p^{k−1}`.
    pub fn power_basis(p: u64, k: u32, n: u64) -> Result<Self, PadicError> {
        PadicSeq::from_fn("power-basis", p, k, n, |i| Pow::pow(BigInt::from(p), i - 1))
    }

    /// `Q_k = (u·p)^{k−1}` for a unit `u`.
    pub fn scaled_power(p: u64, unit: u64, k: u32, n: u64) -> Result<Self, PadicError> {
        if unit.is_multiple_of(p) {
            return Err(PadicError::NotRepresentable(format!("{unit} is not a unit mod {p}")));
        }
        PadicSeq::from_fn(format!("scaled-power-{unit}"), p, k, n, |i| {
            Pow::pow(BigInt::from(unit) * BigInt::from(p), i - 1)
        })
    }

    /// `Q_k = (φ^k + 3φ̄^k) p^{k−1}` with `φ` the golden ratio lifted from
    /// the smallest simple root of `x² − x − 1` modulo `p`, and `φ̄ = 1 − φ`.
    pub fn golden_ratio(p: u64, k: u32, n: u64) -> Result<Self, PadicError> {
        let phi = golden_phi(p, k)?;
        let one = PadicApprox::from_u64(p, k, 1);
        let phibar = one.sub(&phi);
        let pp = PadicApprox::from_u64(p, k, p);
        let terms = (1..=n).map(|i| phi.pow(i).add(&phibar.pow(i).mul_u64(3)).mul(&pp.pow(i - 1))).collect();
        PadicSeq::new(format!("golden-ratio-{p}"), p, k, terms)
    }

    /// Terms `p^{v} · u` from `(valuation, unit)` pairs.
    pub fn table(p: u64, k: u32, rows: &[(u32, u64)]) -> Result<Self, PadicError> {
        let terms = rows
            .iter()
            .map(|&(v, u)| PadicApprox::new(p, k, &(BigInt::from(u) * Pow::pow(BigInt::from(p), v))))
            .collect();
        PadicSeq::new("table", p, k, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> u64 {
        self.terms.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: u64) -> Result<&PadicApprox, PadicError> {
        if i == 0 || i > self.len() {
            return Err(PadicError::OutOfRange { index: i, len: self.len() });
        }
        Ok(&self.terms[i as usize - 1])
    }

    pub fn terms(&self) -> &[PadicApprox] {
        &self.terms
    }

    /// Whether the materialized terms reach valuation `K`, so that any
    /// later term vanishes modulo `p^K`.
    pub fn reaches_precision(&self) -> bool {
        self.terms.last().is_some_and(PadicApprox::is_below_precision)
    }

    fn zero(&self) -> PadicApprox {
        PadicApprox::from_u64(self.p, self.k, 0)
    }
}

impl fmt::Debug for PadicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicSeq").field("name", &self.name).field("p", &self.p).field("k", &self.k).finish()
    }
}

/// The golden ratio modulo `p^K`.
pub fn golden_phi(p: u64, k: u32) -> Result<PadicApprox, PadicError> {
    let poly = [BigInt::from(-1), BigInt::from(-1), BigInt::from(1)];
    (0..p).find_map(|seed| hensel_root(&poly, p, k, seed).ok()).ok_or(PadicError::NoRoot(p))
}

/// `Σ ε_k Q_k mod p^K`. Digits must be below `p`. Terms past the
/// materialized range count as zero once the sequence has reached
/// valuation `K`.
pub fn eval_padic(eps: &CoeffFn, q: &PadicSeq) -> Result<PadicApprox, PadicError> {
    let mut acc = q.zero();
    for (i, d) in eps.iter() {
        if d >= q.p {
            return Err(PadicError::DigitTooLarge { index: i, digit: d, p: q.p });
        }
        if i > q.len() && q.reaches_precision() {
            break;
        }
        acc = acc.add(&q.term(i)?.mul_u64(d));
    }
    Ok(acc)
}

/// Extracts digits below `p` from the lowest index upward; with a family,
/// the result must be a member.
pub fn decode_padic(x: &PadicApprox, q: &PadicSeq, fam: Option<&PredecessorFamily>) -> Result<CoeffFn, PadicError> {
    if x.p != q.p || x.k != q.k {
        return Err(PadicError::Mismatch);
    }
    let p = q.p;
    let mut rem = x.clone();
    let mut terms = Vec::new();
    for (idx, qk) in q.terms.iter().enumerate() {
        if rem.is_below_precision() || qk.is_below_precision() {
            break;
        }
        let v = qk.valuation();
        if rem.valuation() < v {
            return Err(PadicError::NotRepresentable(format!(
                "remainder has valuation {} below that of term {}",
                rem.valuation(),
                idx + 1
            )));
        }
        if rem.valuation() > v {
            continue;
        }
        // rem / p^v ≡ d · (Q_k / p^v) mod p
        let unit = BigInt::from(qk.leading_unit_digit());
        let inv = inverse_mod(&unit, &BigInt::from(p)).expect("leading digit is a unit");
        let d = (BigInt::from(rem.leading_unit_digit()) * inv).mod_floor(&BigInt::from(p));
        let d = d.to_u64().expect("digit below p");
        rem = rem.sub(&qk.mul_u64(d));
        terms.push((idx as u64 + 1, d));
    }
    if !rem.is_below_precision() {
        return Err(PadicError::NotRepresentable("sequence terms run out before the precision".into()));
    }
    let eps = CoeffFn::from_pairs(terms).expect("increasing indices");
    if let Some(fam) = fam {
        match decompose_asc(&eps, fam) {
            Ok(_) => {}
            Err(CollectionError::NotMember { witness }) => {
                return Err(PadicError::NotInCollection { witness, digits: eps })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(eps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadicUniqueOutcome {
    /// `members` counts the zero function; `residues` is the number of
    /// distinct values, equal to `members`.
    Pass {
        members: usize,
        residues: usize,
    },
    Collision(Collision),
}

fn padic_key(x: &PadicApprox) -> BigUint {
    x.residue.clone()
}

/// Values of zero and of every member of order at most `order_bound`.
fn member_values(
    q: &PadicSeq,
    fam: &PredecessorFamily,
    order_bound: u64,
) -> Result<Vec<(CoeffFn, PadicApprox)>, PadicError> {
    let mut out = vec![(CoeffFn::zero(), q.zero())];
    for mu in AscendingIter::new(fam) {
        let mu = mu?;
        if mu.order_asc() > order_bound {
            break;
        }
        let v = eval_padic(&mu, q)?;
        out.push((mu, v));
    }
    Ok(out)
}

/// Checks that members of order at most `order_bound` have distinct values
/// modulo `p^K`. The zero function is included.
pub fn check_unique_padic(
    q: &PadicSeq,
    fam: &PredecessorFamily,
    order_bound: u64,
) -> Result<PadicUniqueOutcome, PadicError> {
    let mut seen: HashMap<BigUint, CoeffFn> = HashMap::new();
    for (mu, v) in member_values(q, fam, order_bound)? {
        if let Some(prev) = seen.get(&padic_key(&v)) {
            return Ok(PadicUniqueOutcome::Collision(Collision {
                first: prev.clone(),
                second: mu,
                value: v.residue.clone(),
            }));
        }
        seen.insert(padic_key(&v), mu);
    }
    Ok(PadicUniqueOutcome::Pass { members: seen.len(), residues: seen.len() })
}

/// Digit ceiling `min(⌊√p⌋, (p − 1)/2)` under which a decreasing subset has
/// only one decreasing fundamental sequence.
pub fn weak_converse_digit_bound(p: u64) -> u64 {
    p.isqrt().min((p - 1) / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Same value sets and the sequences agree term by term.
    Agree,
    /// Same value sets, but the sequences first differ at this index.
    FirstDifference(u64),
    /// The value sets differ, so the probe says nothing.
    ValueSetsDiffer,
}

/// Compares the value sets of `q` and `z` over members of order at most
/// `order_bound` and, when they coincide, looks for the first differing
/// term.
pub fn weak_converse_probe(
    q: &PadicSeq,
    z: &PadicSeq,
    fam: &PredecessorFamily,
    order_bound: u64,
) -> Result<ProbeOutcome, PadicError> {
    if q.p != z.p || q.k != z.k {
        return Err(PadicError::Mismatch);
    }
    let set = |s: &PadicSeq| -> Result<std::collections::BTreeSet<BigUint>, PadicError> {
        Ok(member_values(s, fam, order_bound)?.iter().map(|(_, v)| padic_key(v)).collect())
    };
    if set(q)? != set(z)? {
        return Ok(ProbeOutcome::ValueSetsDiffer);
    }
    let n = q.len().min(z.len());
    for i in 1..=n {
        if q.term(i)? != z.term(i)? {
            return Ok(ProbeOutcome::FirstDifference(i));
        }
    }
    Ok(ProbeOutcome::Agree)
}

/// Whether `ord_p(Q_k) = ord_p(Z_k)` for every index both materialize.
pub fn valuations_agree(q: &PadicSeq, z: &PadicSeq) -> bool {
    q.terms.iter().zip(&z.terms).all(|(a, b)| a.valuation() == b.valuation())
}

/// The largest digit among members of order at most `order_bound`.
pub fn max_member_digit(fam: &PredecessorFamily, order_bound: u64) -> Result<u64, PadicError> {
    let mut best = 0;
    for mu in AscendingIter::new(fam) {
        let mu = mu?;
        if mu.order_asc() > order_bound {
            break;
        }
        best = best.max(mu.iter().map(|(_, d)| d).max().unwrap_or(0));
    }
    Ok(best)
}
