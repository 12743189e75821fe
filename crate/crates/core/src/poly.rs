//! Univariate polynomials over the rationals, with Sturm-sequence root counting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no well-defined root count")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("empty interval: lower bound is not below upper bound")]
    EmptyInterval,
}

/// Coefficients lowest degree first; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

/// Interval endpoint, possibly infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl From<Rational> for Bound {
    fn from(value: Rational) -> Self {
        Bound::Finite(value)
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x - root`.
    pub fn linear_root(root: &Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip().expect("leading coefficient is nonzero")),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap().checked_div(&lc).expect("nonzero lc");
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Rational::is_zero) {
                rem.pop();
            }
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The polynomial with the same roots, each of multiplicity one.
    pub fn square_free(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    /// Signed remainder sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Polynomial> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut prev = self.clone();
        let mut cur = self.derivative();
        while !cur.is_zero() {
            let (_, r) = prev.div_rem(&cur).expect("cur is nonzero");
            seq.push(cur.clone());
            prev = cur;
            cur = -r;
        }
        seq
    }

    /// Sign just to the right of a finite point: the sign of the first
    /// non-vanishing derivative there.
    fn sign_right_of(&self, x: &Rational) -> i32 {
        let mut p = self.clone();
        while !p.is_zero() {
            let s = p.eval(x).signum();
            if s != 0 {
                return s;
            }
            p = p.derivative();
        }
        0
    }

    /// Sign just to the left of a finite point.
    fn sign_left_of(&self, x: &Rational) -> i32 {
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let s = p.eval(x).signum();
            if s != 0 {
                return if k % 2 == 0 { s } else { -s };
            }
            p = p.derivative();
            k += 1;
        }
        0
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match (self.leading(), self.degree()) {
            (Some(lc), Some(deg)) => {
                let s = lc.signum();
                if positive || deg % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn real_roots_in_interval(&self, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let ordered = match (lo, hi) {
            (Bound::PosInfinity, _) | (_, Bound::NegInfinity) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
            _ => true,
        };
        if !ordered {
            return Err(PolyError::EmptyInterval);
        }
        let seq = self.sturm_sequence();
        let signs_lo: Vec<i32> = seq
            .iter()
            .map(|p| match lo {
                Bound::NegInfinity => p.sign_at_infinity(false),
                Bound::Finite(a) => p.sign_right_of(a),
                Bound::PosInfinity => unreachable!(),
            })
            .collect();
        let signs_hi: Vec<i32> = seq
            .iter()
            .map(|p| match hi {
                Bound::PosInfinity => p.sign_at_infinity(true),
                Bound::Finite(b) => p.sign_left_of(b),
                Bound::NegInfinity => unreachable!(),
            })
            .collect();
        let lo_v = sign_variations(&signs_lo);
        let hi_v = sign_variations(&signs_hi);
        Ok(lo_v.saturating_sub(hi_v))
    }

    pub fn real_root_count(&self) -> Result<usize, PolyError> {
        self.real_roots_in_interval(&Bound::NegInfinity, &Bound::PosInfinity)
    }

    /// Discriminant of a quadratic `a x^2 + b x + c`; `None` for other degrees.
    pub fn quadratic_discriminant(&self) -> Option<Rational> {
        if self.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        Some(b * b - Rational::int(4) * a * c)
    }

    /// Rational roots via the rational root theorem applied to the
    /// square-free, integer-scaled polynomial. Sorted ascending, distinct.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let Some(deg) = self.degree() else {
            return roots;
        };
        if deg == 0 {
            return roots;
        }
        let mut p = self.square_free();
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p = p.div_rem(&Polynomial::x()).unwrap().0;
        }
        // Clear denominators to get integer coefficients.
        let lcm = p
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| {
                num_integer::Integer::lcm(&acc, c.denom())
            });
        let scaled = p.scale(&Rational::from(lcm));
        if scaled.degree().unwrap_or(0) > 0 {
            let c0 = scaled.coeffs[0].numer().clone();
            let cn = scaled.leading().unwrap().numer().clone();
            for num in divisors(&c0) {
                for den in divisors(&cn) {
                    for sign in [1i64, -1] {
                        let cand = Rational::new(num.clone() * sign, den.clone()).unwrap();
                        if !roots.contains(&cand) && scaled.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Resultant via the Sylvester determinant. Zero exactly when the two
    /// polynomials share a complex root (or one of them is zero).
    pub fn resultant(&self, other: &Polynomial) -> Rational {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Rational::zero();
        };
        if m == 0 && n == 0 {
            return Rational::one();
        }
        let size = m + n;
        let mut sylvester = Matrix::zeros(size, size);
        for row in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                sylvester[(row, row + k)] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                sylvester[(n + row, row + k)] = c.clone();
            }
        }
        sylvester.determinant()
    }

    /// True when `self` is a nonzero rational multiple of `other`.
    pub fn is_proportional_to(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() || self.degree() != other.degree() {
            return false;
        }
        let ratio = self
            .leading()
            .unwrap()
            .checked_div(other.leading().unwrap())
            .unwrap();
        *self == other.scale(&ratio)
    }
}

fn sign_variations(signs: &[i32]) -> usize {
    let nonzero: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_traits::{One, Signed, ToPrimitive, Zero};
    let n = n.abs();
    if n.is_zero() {
        return vec![num_bigint::BigInt::one()];
    }
    // Branch polynomials have modest coefficients; fall back to the trivial
    // divisors when the magnitude is out of trial-division range.
    match n.to_u64() {
        Some(v) if v <= 1 << 40 => {
            let mut out = Vec::new();
            let mut d = 1u64;
            while d * d <= v {
                if v % d == 0 {
                    out.push(num_bigint::BigInt::from(d));
                    if d * d != v {
                        out.push(num_bigint::BigInt::from(v / d));
                    }
                }
                d += 1;
            }
            out
        }
        _ => vec![num_bigint::BigInt::one(), n],
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Polynomial::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})x")?,
                _ => write!(f, "({c:?})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Quotient of two polynomials, kept unreduced except for the zero check on
/// the denominator. Used to replay substitution chains exactly.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::constant(Rational::one()),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(Polynomial::constant(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RationalFunction {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RationalFunction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, PolyError> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Numerator with the common factor against the denominator removed.
    pub fn reduced_numerator(&self) -> Polynomial {
        let g = self.num.gcd(&self.den);
        if g.is_zero() {
            return self.num.clone();
        }
        self.num.div_rem(&g).expect("gcd is nonzero").0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_ints(&[1, -5, 6]);
        assert!(p.eval(&q(1, 3)).is_zero());
        assert!(p.eval(&q(1, 2)).is_zero());
        let quad = Polynomial::from_ints(&[6, 3, 1]);
        assert_eq!(quad.eval(&Rational::zero()), Rational::int(6));
    }

    #[test]
    fn root_count_examples() {
        let quad = Polynomial::from_ints(&[6, 3, 1]);
        assert_eq!(
            quad.real_roots_in_interval(&Bound::Finite(Rational::zero()), &Bound::PosInfinity),
            Ok(0)
        );
        let l_quad = Polynomial::from_ints(&[1, -5, 6]);
        assert_eq!(
            l_quad.real_roots_in_interval(&Rational::zero().into(), &Rational::one().into()),
            Ok(2)
        );
        let lin = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(
            lin.real_roots_in_interval(&Rational::zero().into(), &Bound::PosInfinity),
            Ok(1)
        );
    }

    #[test]
    fn open_interval_excludes_endpoint_roots() {
        // (x - 1)(x - 2)^2 (x + 3)
        let p = &(&Polynomial::linear_root(&Rational::one())
            * &Polynomial::linear_root(&Rational::int(2)).pow(2))
            * &Polynomial::linear_root(&Rational::int(-3));
        let b = |v: i64| Bound::Finite(Rational::int(v));
        assert_eq!(p.real_roots_in_interval(&b(1), &b(2)), Ok(0));
        assert_eq!(p.real_roots_in_interval(&b(0), &b(2)), Ok(1));
        assert_eq!(p.real_roots_in_interval(&b(1), &b(3)), Ok(1));
        assert_eq!(p.real_roots_in_interval(&b(-3), &b(3)), Ok(2));
        assert_eq!(p.real_root_count(), Ok(3));
    }

    #[test]
    fn errors() {
        assert_eq!(
            Polynomial::zero().real_root_count(),
            Err(PolyError::ZeroPolynomial)
        );
        let p = Polynomial::from_ints(&[1, 1]);
        let b = |v: i64| Bound::Finite(Rational::int(v));
        assert_eq!(p.real_roots_in_interval(&b(2), &b(2)), Err(PolyError::EmptyInterval));
        assert_eq!(
            p.real_roots_in_interval(&Bound::PosInfinity, &b(2)),
            Err(PolyError::EmptyInterval)
        );
        assert_eq!(p.div_rem(&Polynomial::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn constants_have_no_roots() {
        let c = Polynomial::constant(Rational::int(-7));
        assert_eq!(c.real_root_count(), Ok(0));
    }

    #[test]
    fn division_identity() {
        let a = Polynomial::from_ints(&[3, 0, -2, 5, 1]);
        let b = Polynomial::from_ints(&[1, 2, 3]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(&(&quot * &b) + &rem, a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn rational_roots_and_resultant() {
        // (n^2+n)L^2 - (2n+1)L + 1 at n = 4
        let p = Polynomial::from_ints(&[1, -9, 20]);
        assert_eq!(p.rational_roots(), vec![q(1, 5), q(1, 4)]);
        let shared = Polynomial::from_ints(&[-1, 5]);
        assert!(p.resultant(&shared).is_zero());
        let coprime = Polynomial::from_ints(&[-2, 0, 1]);
        assert!(!p.resultant(&coprime).is_zero());
        // Res(x^2 - 2, x - 1) = (1)^2 - 2 up to sign
        assert_eq!(coprime.resultant(&Polynomial::from_ints(&[-1, 1])).abs(), Rational::one());
    }

    #[test]
    fn square_free_part() {
        let p = &Polynomial::from_ints(&[-1, 1]).pow(3) * &Polynomial::from_ints(&[2, 0, 1]);
        let sf = p.square_free();
        assert_eq!(sf.degree(), Some(3));
        assert!(sf.eval(&Rational::one()).is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Factor with a root set known by construction.
        #[derive(Debug, Clone)]
        enum Factor {
            Linear(Rational),
            /// x^2 - m with m > 0 not a square: roots ±sqrt(m).
            Surd(i64),
            /// x^2 + x + c with c > 1/4: no real roots.
            Positive(i64),
        }

        fn factor() -> impl Strategy<Value = Factor> {
            prop_oneof![
                3 => (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Factor::Linear(Rational::frac(n, d))),
                1 => prop::sample::select(vec![2i64, 3, 5, 6, 7, 8, 10]).prop_map(Factor::Surd),
                1 => (1i64..=5).prop_map(Factor::Positive),
            ]
        }

        fn bound() -> impl Strategy<Value = Bound> {
            prop_oneof![
                1 => Just(Bound::NegInfinity),
                1 => Just(Bound::PosInfinity),
                4 => (-8i64..=8, 1i64..=2).prop_map(|(n, d)| Bound::Finite(Rational::frac(n, d))),
            ]
        }

        fn above(x_sq_root_of: i64, sign: i64, lo: &Bound) -> bool {
            // Is sign*sqrt(m) > lo ?
            match lo {
                Bound::NegInfinity => true,
                Bound::PosInfinity => false,
                Bound::Finite(a) => {
                    let m = Rational::int(x_sq_root_of);
                    if sign > 0 {
                        a.is_negative() || (a * a) < m
                    } else {
                        a.is_negative() && (a * a) > m
                    }
                }
            }
        }

        fn below(m: i64, sign: i64, hi: &Bound) -> bool {
            match hi {
                Bound::NegInfinity => false,
                Bound::PosInfinity => true,
                Bound::Finite(b) => {
                    let m = Rational::int(m);
                    if sign > 0 {
                        b.is_positive() && (b * b) > m
                    } else {
                        !b.is_negative() || (b * b) < m
                    }
                }
            }
        }

        fn in_open(x: &Rational, lo: &Bound, hi: &Bound) -> bool {
            let gt = match lo {
                Bound::NegInfinity => true,
                Bound::PosInfinity => false,
                Bound::Finite(a) => x > a,
            };
            let lt = match hi {
                Bound::NegInfinity => false,
                Bound::PosInfinity => true,
                Bound::Finite(b) => x < b,
            };
            gt && lt
        }

        proptest! {
            #[test]
            fn sturm_count_matches_constructed_roots(
                factors in prop::collection::vec(factor(), 1..=3),
                scale in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
                lo in bound(),
                hi in bound(),
            ) {
                let mut p = Polynomial::constant(Rational::int(scale));
                for f in &factors {
                    let g = match f {
                        Factor::Linear(r) => Polynomial::linear_root(r),
                        Factor::Surd(m) => Polynomial::from_ints(&[-m, 0, 1]),
                        Factor::Positive(c) => Polynomial::from_ints(&[*c, 1, 1]),
                    };
                    p = &p * &g;
                }
                prop_assume!(p.degree().unwrap() <= 4);
                let ordered = match (&lo, &hi) {
                    (Bound::PosInfinity, _) | (_, Bound::NegInfinity) => false,
                    (Bound::Finite(a), Bound::Finite(b)) => a < b,
                    _ => true,
                };
                let got = p.real_roots_in_interval(&lo, &hi);
                if !ordered {
                    prop_assert_eq!(got, Err(PolyError::EmptyInterval));
                    return Ok(());
                }
                let mut rational: Vec<Rational> = Vec::new();
                let mut surds: Vec<(i64, i64)> = Vec::new();
                for f in &factors {
                    match f {
                        Factor::Linear(r) => if in_open(r, &lo, &hi) && !rational.contains(r) {
                            rational.push(r.clone());
                        },
                        Factor::Surd(m) => for s in [1, -1] {
                            if above(*m, s, &lo) && below(*m, s, &hi) && !surds.contains(&(*m, s)) {
                                surds.push((*m, s));
                            }
                        },
                        Factor::Positive(_) => {}
                    }
                }
                // sqrt(8) = 2 sqrt(2) is distinct from sqrt(2); all listed m are non-squares.
                prop_assert_eq!(got, Ok(rational.len() + surds.len()));
            }

            #[test]
            fn sturm_count_matches_sign_change_scan(
                coeffs in prop::collection::vec(-5i64..=5, 2..=5),
            ) {
                let p = Polynomial::from_ints(&coeffs);
                prop_assume!(p.degree().unwrap_or(0) >= 1);
                // Square-free inputs only: every real root is then a sign change.
                prop_assume!(p.gcd(&p.derivative()).degree() == Some(0));
                let lead = *coeffs.iter().rev().find(|&&c| c != 0).unwrap() as f64;
                let cauchy = 1.0 + coeffs.iter().map(|&c| (c as f64 / lead).abs()).fold(0.0, f64::max);
                let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64);
                let steps = 200_000;
                let mut changes = 0;
                let mut prev = 0.0f64;
                for k in 0..=steps {
                    let x = -cauchy + 2.0 * cauchy * (k as f64) / (steps as f64);
                    let v = eval(x);
                    if v != 0.0 {
                        if prev != 0.0 && (prev < 0.0) != (v < 0.0) {
                            changes += 1;
                        }
                        prev = v;
                    }
                }
                prop_assert_eq!(p.real_root_count().unwrap(), changes);
                // Rational root scan: every reported rational root is exact.
                for r in p.rational_roots() {
                    prop_assert!(p.eval(&r).is_zero());
                }
            }
        }
    }
}
