//! Exact rational numbers with a machine-word fast path.
//!
//! Values whose reduced numerator and denominator fit in an `i64` are kept
//! inline; anything larger is promoted to a [`BigRational`]. The
//! representation is canonical (reduced, positive denominator, inline
//! whenever it fits), so derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`, both components in `-i64::MAX..=i64::MAX`.
    Small(i64, i64),
    /// Reduced and guaranteed not to fit the inline form.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(x: i128) -> bool {
    x >= -(i64::MAX as i128) && x <= i64::MAX as i128
}

impl Q {
    pub fn zero() -> Self {
        Q(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Q(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Q(Repr::Small(n, 1))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Q(Repr::Small(n as i64, d as i64))
        } else {
            Q(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))))
        }
    }

    /// Canonicalises an arbitrary big rational.
    pub fn from_big(r: BigRational) -> Self {
        let r = {
            let (n, d) = (r.numer().clone(), r.denom().clone());
            BigRational::new(n, d)
        };
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Q(Repr::Small(n, d));
            }
        }
        Q(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn pow(&self, exp: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Bit length of numerator plus denominator; a coarse size measure.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(n, d) => (64 - n.unsigned_abs().leading_zeros() + 64 - d.leading_zeros()) as u64,
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    fn add_ref(&self, other: &Q) -> Q {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Self::from_i128(*a as i128 + *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Q) -> Q {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Q::zero();
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = gcd_u128(a.unsigned_abs(), d as u128) as i128;
                let g2 = gcd_u128(c.unsigned_abs(), b as u128) as i128;
                let n = (a / g1) * (c / g2);
                let m = (b / g2) * (d / g1);
                if fits(n) && fits(m) {
                    Q(Repr::Small(n as i64, m as i64))
                } else {
                    Q(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(m)))))
                }
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg_ref(&self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => Q(Repr::Small(-n, *d)),
            Repr::Big(b) => Q(Repr::Big(Box::new(-(**b).clone()))),
        }
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::from_int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Self {
        Q::from_int(n as i64)
    }
}

impl From<usize> for Q {
    fn from(n: usize) -> Self {
        Q::from_big(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Q {
    fn from(n: BigInt) -> Self {
        Q::from_big(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Self {
        Q::from_big(r)
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseQError(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for Q {
    fn zero() -> Self {
        Q::zero()
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl One for Q {
    fn one() -> Self {
        Q::one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                $imp(self, rhs)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $imp(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                $imp(&self, rhs)
            }
        }
        impl<'a> $tr<Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $imp(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &Q, b: &Q) -> Q {
    a.add_ref(b)
}
fn sub_impl(a: &Q, b: &Q) -> Q {
    a.add_ref(&b.neg_ref())
}
fn mul_impl(a: &Q, b: &Q) -> Q {
    a.mul_ref(b)
}
fn div_impl(a: &Q, b: &Q) -> Q {
    a.mul_ref(&b.recip())
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        self.neg_ref()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        self.neg_ref()
    }
}

macro_rules! forward_assign {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<Q> for Q {
            fn $method(&mut self, rhs: Q) {
                *self = $imp(self, &rhs);
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            fn $method(&mut self, rhs: &'a Q) {
                *self = $imp(self, rhs);
            }
        }
    };
}

forward_assign!(AddAssign, add_assign, add_impl);
forward_assign!(SubAssign, sub_assign, sub_impl);
forward_assign!(MulAssign, mul_assign, mul_impl);
forward_assign!(DivAssign, div_assign, div_impl);

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Q> for Q {
    fn sum<I: Iterator<Item = &'a Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |a, b| a + b)
    }
}

impl Product for Q {
    fn product<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::one(), |a, b| a * b)
    }
}

/// Shorthand for an integer-valued [`Q`].
pub fn q(n: i64) -> Q {
    Q::from_int(n)
}

/// Shorthand for `num/den`.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Q {
    (1..=n as i64).map(Q::from_int).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(q: &Q) -> BigRational {
        q.to_big()
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(qr(1, 2) + qr(1, 3), qr(5, 6));
        assert_eq!(qr(1, 2) - qr(1, 2), Q::zero());
        assert_eq!(qr(-3, 4) * qr(8, 9), qr(-2, 3));
        assert_eq!(qr(3, 4) / qr(-3, 8), q(-2));
        assert_eq!(qr(4, -6), qr(-2, 3));
        assert_eq!(qr(0, -5), Q::zero());
        assert_eq!(factorial(5), q(120));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = q(i64::MAX);
        let b = &a + &a;
        assert_eq!(b.to_big(), BigRational::from_integer(BigInt::from(i64::MAX) * 2));
        let back = &b - &a;
        assert_eq!(back, a);
        assert!(matches!(back.0, Repr::Small(..)));
        let tiny = qr(1, i64::MAX) * qr(1, i64::MAX);
        assert_eq!(tiny * q(i64::MAX) * q(i64::MAX), Q::one());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/-6".parse::<Q>().unwrap(), qr(-1, 2));
        assert_eq!(qr(-1, 2).to_string(), "-1/2");
        assert_eq!(q(7).to_string(), "7");
        assert!("1/0".parse::<Q>().is_err());
        let huge: Q = "123456789012345678901234567891/7".parse().unwrap();
        assert_eq!(huge.to_string(), "123456789012345678901234567891/7");
    }

    fn arb_q() -> impl Strategy<Value = Q> {
        prop_oneof![
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| qr(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Q::from_big(BigRational::new(n.into(), d.into()))),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in arb_q(), b in arb_q()) {
            prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
            prop_assert_eq!(big(&(&a - &b)), big(&a) - big(&b));
            prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
            if !b.is_zero() {
                prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
            }
            prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
            // canonical form: equal values have equal representations
            let round = Q::from_big(big(&a));
            prop_assert_eq!(round, a);
        }
    }
}
