//! Exact rationals and Hirzebruch–Jung continued fractions.
//!
//! The continued fractions here use the minus-sign convention
//! `[k0, k1, ..., kn] = k0 - 1/[k1, ..., kn]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("continued fraction is empty")]
    Empty,
    #[error("a tail of the continued fraction evaluates to zero")]
    ZeroTail,
    #[error("{m} and {e} are not coprime")]
    NotCoprime { m: i64, e: i64 },
    #[error("residue {e} out of range for modulus {m}")]
    OutOfRange { m: i64, e: i64 },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("integer overflow converting {0}")]
    Overflow(String),
}

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn fract(&self) -> Rational {
        Rational(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// The value as `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn numer_i64(&self) -> Result<i64, ArithError> {
        self.numer()
            .to_i64()
            .ok_or_else(|| ArithError::Overflow(self.to_string()))
    }

    pub fn denom_i64(&self) -> Result<i64, ArithError> {
        self.denom()
            .to_i64()
            .ok_or_else(|| ArithError::Overflow(self.to_string()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Rational {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Rational {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Rational, ArithError> {
        let t = s.trim().replace('\u{2212}', "-");
        let err = || ArithError::Parse(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Rational::from_big(n, d))
            }
            None => Ok(Rational::from(t.parse::<BigInt>().map_err(|_| err())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rational::from(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<i64> for Rational {
            type Output = Rational;
            fn $m(self, rhs: i64) -> Rational {
                Rational(self.0.$m(BigRational::from_integer(rhs.into())))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer((*other).into())
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}

/// `(m, e)` with `gcd(m, e) = 1`, stored with the residue normalized to `0 <= e < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HjPair {
    pub m: i64,
    pub e: i64,
}

impl HjPair {
    pub fn new(m: i64, e: i64) -> Result<HjPair, ArithError> {
        if m < 1 {
            return Err(ArithError::OutOfRange { m, e });
        }
        let e = e.rem_euclid(m);
        if m > 1 && e.gcd(&m) != 1 {
            return Err(ArithError::NotCoprime { m, e });
        }
        Ok(HjPair { m, e })
    }

    /// The empty box `(1, 0)`.
    pub fn empty() -> HjPair {
        HjPair { m: 1, e: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.m == 1
    }

    pub fn expansion(&self) -> Vec<i64> {
        hj_expand(self.m, self.e).expect("normalized pair")
    }

    /// The pair read from the other end of its chain.
    pub fn dual(&self) -> HjPair {
        if self.m == 1 {
            return *self;
        }
        HjPair {
            m: self.m,
            e: dual_residue(self.m, self.e).expect("normalized pair"),
        }
    }

    /// `e/m` as a rational.
    pub fn ratio(&self) -> Rational {
        Rational::new(self.e, self.m)
    }

    /// Recover `(m, e)` from an all-`>= 2` chain.
    pub fn from_chain(ks: &[i64]) -> Result<HjPair, ArithError> {
        if ks.is_empty() {
            return Ok(HjPair::empty());
        }
        let q = cf_eval(&ks.iter().map(|&k| Rational::from(k)).collect::<Vec<_>>())?;
        HjPair::new(q.numer_i64()?, q.denom_i64()?)
    }
}

impl fmt::Display for HjPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.e)
    }
}

/// Evaluate `[k0, ..., kn]`.
pub fn cf_eval(ks: &[Rational]) -> Result<Rational, ArithError> {
    let (last, rest) = ks.split_last().ok_or(ArithError::Empty)?;
    let mut acc = last.clone();
    for k in rest.iter().rev() {
        if acc.is_zero() {
            return Err(ArithError::ZeroTail);
        }
        acc = k - &acc.recip();
    }
    Ok(acc)
}

/// Convenience wrapper of [`cf_eval`] for integer entries.
pub fn cf_eval_int(ks: &[i64]) -> Result<Rational, ArithError> {
    cf_eval(&ks.iter().map(|&k| Rational::from(k)).collect::<Vec<_>>())
}

fn check_residue(m: i64, e: i64) -> Result<(), ArithError> {
    if m == 1 && e == 0 {
        return Ok(());
    }
    if m < 1 || e <= 0 || e >= m {
        return Err(ArithError::OutOfRange { m, e });
    }
    if e.gcd(&m) != 1 {
        return Err(ArithError::NotCoprime { m, e });
    }
    Ok(())
}

/// The expansion `m/e = [k1, ..., kn]` with every `ki >= 2`; empty for `m = 1`.
pub fn hj_expand(m: i64, e: i64) -> Result<Vec<i64>, ArithError> {
    check_residue(m, e)?;
    let (mut m, mut e) = (m, e);
    let mut out = Vec::new();
    while e > 0 {
        let k = (m + e - 1) / e;
        out.push(k);
        (m, e) = (e, k * e - m);
    }
    Ok(out)
}

/// The inverse of `e` modulo `m`, in `(0, m)`.
pub fn dual_residue(m: i64, e: i64) -> Result<i64, ArithError> {
    check_residue(m, e)?;
    if m == 1 {
        return Ok(0);
    }
    let g = e.extended_gcd(&m);
    Ok(g.x.rem_euclid(m))
}

/// `(⌊q⌋, {q})` with `0 <= {q} < 1`.
pub fn floor_frac(q: &Rational) -> (BigInt, Rational) {
    (q.floor(), q.fract())
}

/// Modular inverse helper for signed arithmetic: returns `(a, b)` with `a*x + b*y = 1`.
pub(crate) fn bezout(x: i64, y: i64) -> Option<(i64, i64)> {
    let g = x.extended_gcd(&y);
    match g.gcd {
        1 => Some((g.x, g.y)),
        -1 => Some((-g.x, -g.y)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-4/2").to_string(), "-2");
        assert_eq!(q("3/-6").to_string(), "-1/2");
        assert_eq!(q("\u{2212}1/3"), Rational::new(-1, 3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_string_form() {
        let r = Rational::new(-2, 3);
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-2/3\"");
        let back: Rational = serde_json::from_str("\"-2/3\"").unwrap();
        assert_eq!(back, r);
        let int: Rational = serde_json::from_str("5").unwrap();
        assert_eq!(int, 5);
    }

    #[test]
    fn cf_eval_examples() {
        assert_eq!(cf_eval_int(&[3]).unwrap(), 3);
        assert_eq!(cf_eval_int(&[3, 2]).unwrap(), Rational::new(5, 2));
        for n in 1..10 {
            assert_eq!(cf_eval_int(&vec![2; n]).unwrap(), Rational::new(n as i64 + 1, n as i64));
        }
        assert_eq!(cf_eval(&[]), Err(ArithError::Empty));
        assert_eq!(cf_eval_int(&[2, 1, 1]), Err(ArithError::ZeroTail));
    }

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expand(5, 2).unwrap(), vec![3, 2]);
        assert_eq!(hj_expand(1, 0).unwrap(), Vec::<i64>::new());
        assert_eq!(hj_expand(6, 5).unwrap(), vec![2; 5]);
        assert_eq!(hj_expand(4, 2), Err(ArithError::NotCoprime { m: 4, e: 2 }));
        assert_eq!(hj_expand(4, 5), Err(ArithError::OutOfRange { m: 4, e: 5 }));
        assert_eq!(dual_residue(5, 2).unwrap(), 3);
        assert_eq!(dual_residue(5, 4).unwrap(), 4);
        assert_eq!(dual_residue(9, 1).unwrap(), 1);
    }

    #[test]
    fn floor_frac_examples() {
        assert_eq!(floor_frac(&q("-2/3")), (BigInt::from(-1), q("1/3")));
        assert_eq!(floor_frac(&q("0")), (BigInt::from(0), q("0")));
        assert_eq!(floor_frac(&q("7/3")), (BigInt::from(2), q("1/3")));
    }

    #[test]
    fn hj_pair_normalizes() {
        assert_eq!(HjPair::new(5, -2).unwrap(), HjPair { m: 5, e: 3 });
        assert_eq!(HjPair::new(1, 7).unwrap(), HjPair::empty());
        assert!(HjPair::new(6, 4).is_err());
        assert_eq!(HjPair::new(5, 2).unwrap().dual(), HjPair { m: 5, e: 3 });
        assert_eq!(HjPair::from_chain(&[3, 2]).unwrap(), HjPair { m: 5, e: 2 });
    }
}
