//! Positive roots by exact bisection, and the dominance test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Real, RealError, RealSeq};
use crate::recurrences::MultiplicityList;

/// `c_0 + c_1 x + ⋯` evaluated exactly.
fn eval(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Coefficients of `e_N x^N + ⋯ + e_1 x − 1`, constant term first.
pub fn l_polynomial(l: &MultiplicityList) -> Vec<BigInt> {
    std::iter::once(BigInt::from(-1)).chain(l.entries().iter().map(|&e| BigInt::from(e))).collect()
}

/// The polynomial whose root in `(0, 1)` is the ratio of the geometric
/// sequence for `β̄^n = lead·β^n + tail·Σ_{k>n} β^k`.
///
/// Differencing consecutive identities gives
/// `Q_{n−1} = (lead + 1) Q_n + (tail − lead) Q_{n+1}`, so the ratio solves
/// `(tail − lead) x² + (lead + 1) x − 1 = 0`.
pub fn lead_tail_polynomial(lead: u64, tail: u64) -> Vec<BigInt> {
    vec![BigInt::from(-1), BigInt::from(lead) + 1, BigInt::from(tail) - BigInt::from(lead)]
}

/// A root `lo ≤ ω ≤ hi`. `exact` means `lo = hi = ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: bool,
}

impl RootBracket {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The root itself when exact, else the midpoint rounded to `scale`
    /// places.
    pub fn to_real(&self, scale: u32) -> Real {
        if self.exact {
            Real::exact(self.lo.clone())
        } else {
            Real::approx(&self.midpoint(), scale)
        }
    }
}

/// Bisects `[lo, hi]` until its width is at most `tol`. The polynomial
/// must change sign on the bracket.
pub fn positive_root_poly(
    coeffs: &[BigInt],
    lo: &BigRational,
    hi: &BigRational,
    tol: &BigRational,
) -> Result<RootBracket, RealError> {
    if !tol.is_positive() || lo > hi {
        return Err(RealError::InvalidPolynomial("need tol > 0 and lo <= hi".into()));
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let f_lo = eval(coeffs, &lo);
    let f_hi = eval(coeffs, &hi);
    for (x, fx) in [(&lo, &f_lo), (&hi, &f_hi)] {
        if fx.is_zero() {
            return Ok(RootBracket { lo: x.clone(), hi: x.clone(), exact: true });
        }
    }
    if f_lo.is_positive() == f_hi.is_positive() {
        return Err(RealError::NoSignChange);
    }
    let lo_positive = f_lo.is_positive();
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let fm = eval(coeffs, &mid);
        if fm.is_zero() {
            return Ok(RootBracket { lo: mid.clone(), hi: mid, exact: true });
        }
        if fm.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootBracket { lo, hi, exact: false })
}

/// The positive root `ω ∈ (0, 1)` of `e_N x^N + ⋯ + e_1 x − 1`.
pub fn positive_root(l: &MultiplicityList, tol: &BigRational) -> Result<RootBracket, RealError> {
    positive_root_poly(&l_polynomial(l), &BigRational::zero(), &BigRational::one(), tol)
}

/// `Q_k = ω^k` for the root `ω` of `l`, exact when `ω` is a dyadic
/// rational found by bisection, otherwise rounded to `precision` places.
pub fn geometric_fundamental(l: &MultiplicityList, precision: u32) -> Result<RealSeq, RealError> {
    let guard = precision + 10;
    let tol = Real::ten_to_minus(guard).value().clone();
    let root = positive_root(l, &tol)?;
    let omega = if root.exact { root.to_real(0) } else { Real::approx(&root.midpoint(), precision) };
    Ok(RealSeq::geometric(format!("geometric{:?}", l.entries()), omega))
}

/// Coefficients `a_0, …, a_n` of `a_n z^n − a_{n−1} z^{n−1} − ⋯ − a_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCoeffs {
    a: Vec<BigRational>,
}

impl PolyCoeffs {
    pub fn new(a: Vec<BigRational>) -> Result<Self, RealError> {
        if a.len() < 2 {
            return Err(RealError::InvalidPolynomial("degree must be at least 1".into()));
        }
        if a.iter().any(Signed::is_negative) {
            return Err(RealError::InvalidPolynomial("coefficients must be nonnegative".into()));
        }
        if a[0].is_zero() || a[a.len() - 1].is_zero() {
            return Err(RealError::InvalidPolynomial("a_n and a_0 must be nonzero".into()));
        }
        Ok(PolyCoeffs { a })
    }

    pub fn from_integers(a: &[i64]) -> Result<Self, RealError> {
        PolyCoeffs::new(a.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// The reciprocal polynomial `z^N − e_1 z^{N−1} − ⋯ − e_N`.
    pub fn reciprocal_of(l: &MultiplicityList) -> Self {
        let mut a: Vec<BigRational> = l.entries().iter().rev().map(|&e| BigRational::from_integer(e.into())).collect();
        a.push(BigRational::one());
        PolyCoeffs { a }
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// Unique root of largest modulus, witnessed by coprime interior
    /// indices `m < l` with nonzero coefficients.
    Dominant { m: usize, l: usize },
    /// The sufficient condition does not apply.
    Inconclusive,
}

/// Dominant when some `1 ≤ m < l ≤ n − 1` with `gcd(m, l) = 1` has
/// `a_m a_l ≠ 0`. The test is sufficient, not necessary.
pub fn dominance_criterion(p: &PolyCoeffs) -> Dominance {
    let n = p.degree();
    let interior: Vec<usize> = (1..n).filter(|&k| !p.a[k].is_zero()).collect();
    for (i, &m) in interior.iter().enumerate() {
        for &l in &interior[i + 1..] {
            if m.gcd(&l) == 1 {
                return Dominance::Dominant { m, l };
            }
        }
    }
    Dominance::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_is_found_exactly() {
        let l = MultiplicityList::new(vec![1, 2]).unwrap();
        let r = positive_root(&l, &BigRational::new(1.into(), 1000.into())).unwrap();
        assert!(r.exact);
        assert_eq!(r.lo, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn bracket_width() {
        let l = MultiplicityList::new(vec![1, 1]).unwrap();
        let tol = BigRational::new(1.into(), BigInt::from(10u64).pow(30));
        let r = positive_root(&l, &tol).unwrap();
        assert!(r.width() <= tol);
        assert!(eval(&l_polynomial(&l), &r.lo).is_negative());
        assert!(eval(&l_polynomial(&l), &r.hi).is_positive());
    }

    #[test]
    fn sign_change_required() {
        let c = vec![BigInt::from(1), BigInt::from(1)];
        assert_eq!(
            positive_root_poly(&c, &BigRational::zero(), &BigRational::one(), &BigRational::one()),
            Err(RealError::NoSignChange)
        );
    }

    #[test]
    fn dominance_cases() {
        assert_eq!(dominance_criterion(&PolyCoeffs::from_integers(&[1, 1, 0, 3]).unwrap()), Dominance::Inconclusive);
        assert_eq!(
            dominance_criterion(&PolyCoeffs::from_integers(&[1, 1, 1, 0, 3]).unwrap()),
            Dominance::Dominant { m: 1, l: 2 }
        );
        assert_eq!(
            dominance_criterion(&PolyCoeffs::from_integers(&[1, 0, 1, 0, 1, 1]).unwrap()),
            Dominance::Inconclusive
        );
        assert_eq!(dominance_criterion(&PolyCoeffs::from_integers(&[2, 0, 0, 0, 5]).unwrap()), Dominance::Inconclusive);
        assert!(PolyCoeffs::from_integers(&[0, 1, 1]).is_err());
        assert!(PolyCoeffs::from_integers(&[1, -1, 1]).is_err());
    }
}
