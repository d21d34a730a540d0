//! Exact rational arithmetic.
//!
//! Values that fit in machine words stay inline; everything else lives in a
//! boxed pair of `BigInt`s. Both representations are kept in lowest terms with
//! a positive denominator, and a value is stored inline whenever it fits, so
//! structural equality and hashing coincide with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalError {
    #[error("division by zero")]
    DivByZero,
    #[error("invalid rational literal `{0}`")]
    Parse(String),
    #[error("exponent {0} is too large")]
    ExponentTooLarge(i64),
}

/// An arbitrary-precision fraction in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `den > 0`, `num != i64::MIN`, `gcd(num, den) = 1`.
    Small(i64, i64),
    /// Never representable as `Small`.
    Big(Box<(BigInt, BigInt)>),
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
        if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
            return (gcd_u64(a as u64, b as u64) as u128) << shift;
        }
    }
}

/// gcd of magnitudes.
///
/// num-bigint's `gcd` is a plain binary algorithm, which degrades badly when
/// one operand is much shorter than the other (the common case when adding
/// a small term to a large running sum). Euclidean remainder steps bring the
/// operands to similar size first.
pub(crate) fn gcd_mag(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut big, mut small) = if a.bits() >= b.bits() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if small.is_zero() {
            return big;
        }
        if let Some(s) = small.to_u64() {
            let r = (&big % s).to_u64().expect("remainder below divisor");
            return BigUint::from(gcd_u64(s, r));
        }
        if big.bits() > small.bits() + 32 {
            let r = &big % &small;
            big = small;
            small = r;
        } else {
            return big.gcd(&small);
        }
    }
}

fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from_biguint(Sign::Plus, gcd_mag(a.magnitude(), b.magnitude()))
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::from_reduced_big(n, BigInt::one())
    }

    pub fn new(num: BigInt, den: BigInt) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::DivByZero);
        }
        Ok(Self::reduce_big(num, den))
    }

    /// `p / q` for machine integers.
    pub fn ratio(p: i64, q: i64) -> Result<Self, RationalError> {
        if q == 0 {
            return Err(RationalError::DivByZero);
        }
        Ok(Self::from_i128(p as i128, q as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (na, da) = (num.unsigned_abs(), den.unsigned_abs());
        let g = match (u64::try_from(na), u64::try_from(da)) {
            (Ok(a), Ok(b)) => gcd_u64(a, b) as i128,
            _ => gcd_u128(na, da) as i128,
        };
        let (mut n, mut d) = if g == 1 { (num, den) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational(Repr::Small(n as i64, d as i64))
        } else {
            Rational(Repr::Big(Box::new((BigInt::from(n), BigInt::from(d)))))
        }
    }

    fn reduce_big(num: BigInt, den: BigInt) -> Self {
        let g = gcd_int(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Self::from_reduced_big(n, d)
    }

    /// Caller guarantees lowest terms and `den > 0`.
    fn from_reduced_big(num: BigInt, den: BigInt) -> Self {
        if let (Some(n), Some(d)) = (num.to_i64(), den.to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(Box::new((num, den))))
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.0.clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.0.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => match b.0.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer())
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(n.div_euclid(*d), 1)),
            Repr::Big(b) => Self::from_integer(b.0.div_floor(&b.1)),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Rational, RationalError> {
        match &self.0 {
            Repr::Small(0, _) => Err(RationalError::DivByZero),
            Repr::Small(n, d) => {
                let (n, d) = if *n < 0 { (-*d, -*n) } else { (*d, *n) };
                Ok(Rational(Repr::Small(n, d)))
            }
            Repr::Big(b) => {
                let (n, d) = if b.0.is_negative() {
                    (-&b.1, -&b.0)
                } else {
                    (b.1.clone(), b.0.clone())
                };
                Ok(Self::from_reduced_big(n, d))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, RationalError> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents take the reciprocal. `0^0 = 1`.
    pub fn pow(&self, exp: i64) -> Result<Rational, RationalError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        if let Repr::Small(n, d) = base.0 {
            if let (Some(pn), Some(pd)) = (pow_i128(n as i128, e), pow_i128(d as i128, e)) {
                return Ok(Self::from_i128(pn, pd));
            }
        }
        let (n, d) = base.big_parts();
        if e > u32::MAX as u64 {
            // Only 0, 1 and -1 survive such exponents without exhausting memory.
            return match base.to_i64() {
                Some(0) | Some(1) => Ok(base),
                Some(-1) => Ok(if e.is_multiple_of(2) { Rational::one() } else { base }),
                _ => Err(RationalError::ExponentTooLarge(exp)),
            };
        }
        let mut acc_n = BigInt::one();
        let mut acc_d = BigInt::one();
        let (mut bn, mut bd) = (n, d);
        while e > 0 {
            if e & 1 == 1 {
                acc_n *= &bn;
                acc_d *= &bd;
            }
            e >>= 1;
            if e > 0 {
                bn = &bn * &bn;
                bd = &bd * &bd;
            }
        }
        Ok(Self::from_reduced_big(acc_n, acc_d))
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    return Self::from_i128(a + c, b);
                }
                Self::from_i128(a * d + c * b, b * d)
            }
            (Repr::Big(x), Repr::Small(c, d)) | (Repr::Small(c, d), Repr::Big(x)) => {
                Self::add_big_small(&x.0, &x.1, *c, *d)
            }
            (Repr::Big(x), Repr::Big(y)) => Self::add_big(&x.0, &x.1, &y.0, &y.1),
        }
    }

    // Accumulating many small terms into a large sum is the common case,
    // so every gcd here runs on machine words.
    fn add_big_small(a: &BigInt, b: &BigInt, c: i64, d: i64) -> Rational {
        let du = d as u64;
        let r = (b.magnitude() % du).to_u64().expect("remainder below divisor");
        let g = gcd_u64(du, r);
        if g == 1 {
            return Self::from_reduced_big(a * d + b * c, b * d);
        }
        let bg = b / g;
        let t = a * (d / g as i64) + &bg * c;
        let tr = (t.magnitude() % g).to_u64().expect("remainder below divisor");
        let g2 = gcd_u64(g, tr);
        if g2 == 1 {
            Self::from_reduced_big(t, bg * d)
        } else {
            Self::from_reduced_big(t / g2, bg * (d / g2 as i64))
        }
    }

    fn add_big(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Rational {
        if b == d {
            return Self::reduce_big(a + c, b.clone());
        }
        let g = gcd_int(b, d);
        if g.is_one() {
            return Self::from_reduced_big(a * d + c * b, b * d);
        }
        let bg = b / &g;
        let dg = d / &g;
        let t = a * &dg + c * &bg;
        let g2 = gcd_int(&t, &g);
        if g2.is_one() {
            Self::from_reduced_big(t, bg * d)
        } else {
            Self::from_reduced_big(t / &g2, bg * (d / g2))
        }
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        if self.is_zero() || rhs.is_zero() {
            return Rational::zero();
        }
        let (a, b) = self.big_parts();
        let (c, d) = rhs.big_parts();
        let g1 = gcd_int(&a, &d);
        let g2 = gcd_int(&c, &b);
        let num = (a / &g1) * (c / &g2);
        let den = (b / g2) * (d / g1);
        Self::from_reduced_big(num, den)
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Self::from_reduced_big(-&b.0, b.1.clone()),
        }
    }
}

fn pow_i128(base: i128, exp: u64) -> Option<i128> {
    let e = u32::try_from(exp).ok()?;
    base.checked_pow(e)
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        if n == i64::MIN {
            Rational::from_integer(BigInt::from(n))
        } else {
            Rational(Repr::Small(n, 1))
        }
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational(Repr::Small(n as i64, 1))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let (a, b) = self.big_parts();
        let (c, d) = other.big_parts();
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$imp(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$imp(&rhs)
            }
        }
    };
}

impl Rational {
    fn sub_ref(&self, rhs: &Rational) -> Rational {
        self.add_ref(&rhs.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `p` or `p/q` with an optional sign on `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Parse(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        if den.starts_with(['+', '-']) {
            return Err(bad());
        }
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        Rational::new(num, den)
    }
}

/// Serialized as `"num/den"`, always with an explicit denominator.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.numer(), self.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d).unwrap()
    }

    fn big(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms() {
        let r = q(6, -4);
        assert_eq!(r.numer(), BigInt::from(-3));
        assert_eq!(r.denom(), BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(q(0, -7), Rational::zero());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(Rational::ratio(1, 0), Err(RationalError::DivByZero));
        assert_eq!(q(1, 2).checked_div(&Rational::zero()), Err(RationalError::DivByZero));
        assert_eq!(Rational::zero().recip(), Err(RationalError::DivByZero));
        assert_eq!(Rational::zero().pow(-1), Err(RationalError::DivByZero));
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_of_negatives() {
        assert_eq!(q(-1, 2).floor(), Rational::from(-1));
        assert_eq!(q(1, 2).floor(), Rational::zero());
        assert_eq!(q(-4, 2).floor(), Rational::from(-2));
        assert_eq!(q(7, 3).floor(), Rational::from(2));
        let huge = big("-100000000000000000000000000001/10");
        assert_eq!(huge.floor(), big("-10000000000000000000000000001"));
    }

    #[test]
    fn pow_handles_signs_and_zero() {
        assert_eq!(q(-2, 3).pow(3).unwrap(), q(-8, 27));
        assert_eq!(q(-2, 3).pow(-2).unwrap(), q(9, 4));
        assert_eq!(Rational::zero().pow(0).unwrap(), Rational::one());
        assert_eq!(Rational::from(-1).pow(1_000_000_000_001).unwrap(), Rational::from(-1));
        assert_eq!(Rational::from(2).pow(100).unwrap(), big("1267650600228229401496703205376"));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Rational::from(i64::MAX);
        let s = &m + &Rational::one();
        assert_eq!(s.to_string(), "9223372036854775808");
        assert_eq!(&s - &Rational::one(), m);
        assert!(matches!((&s - &Rational::one()).0, Repr::Small(..)));
        let min = Rational::from(i64::MIN);
        assert_eq!(-(-&min), min);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(big(" -12 / 8 "), q(-3, 2));
        assert_eq!(big("5"), Rational::from(5));
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let json = serde_json::to_string(&Rational::from(3)).unwrap();
        assert_eq!(json, "\"3/1\"");
        let back: Rational = serde_json::from_str("\"-7/21\"").unwrap();
        assert_eq!(back, q(-1, 3));
    }

    #[test]
    fn gcd_mag_mixed_sizes() {
        let a = BigUint::from(2u32).pow(300u32) * BigUint::from(3u32 * 7 * 11);
        let b = BigUint::from(2u32 * 2 * 7);
        assert_eq!(gcd_mag(&a, &b), BigUint::from(28u32));
        let c = BigUint::from(3u32).pow(200u32) * BigUint::from(5u32).pow(10u32);
        let d = BigUint::from(3u32).pow(150u32) * BigUint::from(7u32).pow(90u32);
        assert_eq!(gcd_mag(&c, &d), BigUint::from(3u32).pow(150u32));
    }

    fn any_rational() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-1000i64..1000, 1i64..1000).prop_map(|(p, d)| q(p, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(p, d)| q(p, d)),
            ("-?[1-9][0-9]{0,40}", "[1-9][0-9]{0,40}")
                .prop_map(|(p, d)| big(&format!("{p}/{d}"))),
        ]
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in any_rational(), b in any_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_then_div_is_identity(a in any_rational(), b in any_rational()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }

        #[test]
        fn canonical_form_matches_big_reduction(a in any_rational(), b in any_rational()) {
            let s = &a + &b;
            let (n, d) = s.big_parts();
            prop_assert!(d.is_positive());
            prop_assert!(gcd_int(&n, &d).is_one());
            let fits = n.to_i64().is_some_and(|v| v != i64::MIN) && d.to_i64().is_some();
            prop_assert_eq!(fits, matches!(s.0, Repr::Small(..)));
        }

        #[test]
        fn ordering_is_consistent_with_subtraction(a in any_rational(), b in any_rational()) {
            let diff = &a - &b;
            prop_assert_eq!(a.cmp(&b), diff.signum().cmp(&0));
        }

        #[test]
        fn floor_bounds(a in any_rational()) {
            let f = a.floor();
            prop_assert!(f.is_integer());
            prop_assert!(f <= a);
            prop_assert!(a < &f + &Rational::one());
        }
    }
}
