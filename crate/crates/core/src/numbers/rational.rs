use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

// num-rational compares through floor divisions; cross-multiplying is
// much cheaper for the small denominators seen here
impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.denom() == other.denom() {
            return self.numer().cmp(other.numer());
        }
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidRational("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for small literals. Panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom).expect("nonzero denominator")
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `n^(-exp)`.
    pub fn inverse_power(n: u32, exp: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::from(n).pow(exp)))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract_part(&self) -> Self {
        Rational(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// True iff the reduced denominator divides some power of `n`.
    pub fn is_n_adic(&self, n: u32) -> bool {
        assert!(n >= 2, "n-adic base must be at least 2");
        let mut d = self.denom().clone();
        let mut rest = n;
        let mut p = 2u32;
        while rest > 1 {
            if rest % p == 0 {
                while rest % p == 0 {
                    rest /= p;
                }
                if p == 2 {
                    let zeros = d.trailing_zeros().unwrap_or(0);
                    d >>= zeros;
                } else {
                    while (&d % p).is_zero() {
                        d /= p;
                    }
                }
            }
            p += 1;
        }
        d.is_one()
    }

    /// If `self = n^e` for an integer `e` (possibly negative), returns `e`.
    pub fn power_of(&self, n: u32) -> Option<i64> {
        if !self.is_positive() {
            return None;
        }
        let base = BigInt::from(n);
        let exponent_of = |v: &BigInt| -> Option<i64> {
            let mut v = v.clone();
            let mut e = 0i64;
            while !v.is_one() {
                let (q, r) = v.div_rem(&base);
                if !r.is_zero() {
                    return None;
                }
                v = q;
                e += 1;
            }
            Some(e)
        };
        if self.numer().is_one() {
            exponent_of(self.denom()).map(|e| -e)
        } else if self.denom().is_one() {
            exponent_of(self.numer())
        } else {
            None
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.numer().to_u64()
        } else {
            None
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        _ => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or `p`, with an optional leading `-` on `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = parse_int(p, true).ok_or_else(bad)?;
                let q = parse_int(q, false).ok_or_else(bad)?;
                Rational::new(p, q).map_err(|_| bad())
            }
            None => parse_int(s, true).map(Rational::integer).ok_or_else(bad),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

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

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("0/7").to_string(), "0");
        assert_eq!(q("6/3").to_string(), "2");
        assert_eq!(q("-3/9").to_string(), "-1/3");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "/", "1/", "/2", "1/0", "1/-2", "+1", "1.5", " 1", "1/2/3", "--1", "-"] {
            assert!(s.parse::<Rational>().is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn n_adic_examples() {
        assert!(q("3/8").is_n_adic(2));
        assert!(!q("1/3").is_n_adic(2));
        assert!(q("1/6").is_n_adic(6));
        assert!(q("5/12").is_n_adic(6));
        assert!(!q("1/5").is_n_adic(6));
        assert!(q("7").is_n_adic(3));
    }

    #[test]
    fn power_of_detects_exponents() {
        assert_eq!(q("1/8").power_of(2), Some(-3));
        assert_eq!(q("4").power_of(2), Some(2));
        assert_eq!(q("1").power_of(5), Some(0));
        assert_eq!(q("3/8").power_of(2), None);
        assert_eq!(q("-2").power_of(2), None);
        assert_eq!(q("1/3").power_of(2), None);
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(q("-1/3").floor(), BigInt::from(-1));
        assert_eq!(q("-1/3").fract_part(), q("2/3"));
        assert_eq!(q("7/2").fract_part(), q("1/2"));
    }

    #[test]
    fn serde_round_trip_uses_strings() {
        let json = serde_json::to_string(&q("-5/10")).unwrap();
        assert_eq!(json, "\"-1/2\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q("-1/2"));
    }
}
