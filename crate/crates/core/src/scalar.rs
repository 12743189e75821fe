//! Exact rational scalars.
//!
//! Every number that flows through the crate is a [`Rational`]: a reduced
//! fraction of arbitrary-precision integers. There is no floating point
//! anywhere in the computational core.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
}

/// An exact fraction, always stored in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`, reporting division by zero as an error.
pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Convenience constructor for literals in code and tests. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator in Rational::frac")
    }

    pub fn int(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
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

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Rational::one();
        for _ in 0..exp {
            out *= self;
        }
        out
    }

    /// Exact square root, if `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
        values
            .into_iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    /// Greatest common divisor of numerators over least common multiple of
    /// denominators; used to normalise integer vectors.
    pub fn gcd(&self, other: &Rational) -> Rational {
        let n = self.numer().gcd(other.numer());
        let d = self.denom().lcm(other.denom());
        Rational(BigRational::new(n, d))
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`2/1`), so every rendered value has one shape.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    /// Accepts `p`, `p/q` and `-p/q`, with an optional Unicode minus sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ScalarError::Malformed(s.to_string());
        let trimmed = s.trim().replace('\u{2212}', "-");
        if trimmed.is_empty() {
            return Err(malformed());
        }
        let parse_int = |t: &str| -> Result<BigInt, ScalarError> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            t.parse::<BigInt>().map_err(|_| malformed())
        };
        match trimmed.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(&trimmed)?))),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::int(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational(BigRational::from_integer(value))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::int(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat_arith(&r("1/3"), &r("1/6"), ArithOp::Add).unwrap(), r("1/2"));
        assert_eq!(rat_arith(&r("-5/2"), &r("3/2"), ArithOp::Mul).unwrap(), r("-15/4"));
        assert_eq!(
            rat_arith(&r("1"), &r("0"), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
        assert_eq!(rat_arith(&r("1/2"), &r("1/3"), ArithOp::Sub).unwrap(), r("1/6"));
    }

    #[test]
    fn stored_reduced_with_positive_denominator() {
        let x = Rational::new(6, -4).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(r("\u{2212}5/2"), Rational::frac(-5, 2));
        assert_eq!(r(" 4 "), Rational::int(4));
        assert_eq!(r("+3/9"), Rational::frac(1, 3));
        for bad in ["", "1/", "/2", "1.5", "a/b", "1//2", "--1", "1/-"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should be rejected");
        }
        assert_eq!("3/0".parse::<Rational>(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn display_is_always_fraction() {
        assert_eq!(Rational::int(2).to_string(), "2/1");
        assert_eq!(Rational::frac(-15, 4).to_string(), "-15/4");
        assert_eq!(Rational::zero().to_string(), "0/1");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rational::frac(9, 4).sqrt_exact(), Some(Rational::frac(3, 2)));
        assert_eq!(Rational::int(2).sqrt_exact(), None);
        assert_eq!(Rational::int(-4).sqrt_exact(), None);
        assert_eq!(Rational::zero().sqrt_exact(), Some(Rational::zero()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Rational> {
            (-50i64..=50, 1i64..=30).prop_map(|(n, d)| Rational::frac(n, d))
        }

        proptest! {
            #[test]
            fn field_axioms(a in rational(), b in rational(), c in rational()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a - &a, Rational::zero());
                if !b.is_zero() {
                    prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a.clone());
                }
            }

            #[test]
            fn results_are_reduced(a in rational(), b in rational()) {
                for v in [&a + &b, &a * &b, &a - &b] {
                    prop_assert!(v.denom() > &BigInt::zero());
                    prop_assert!(v.numer().gcd(v.denom()).is_one());
                }
            }

            #[test]
            fn display_round_trips(a in rational()) {
                prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
            }
        }
    }
}
