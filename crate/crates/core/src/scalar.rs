//! Exact rational scalars.
//!
//! Values that fit in a pair of `i64` are kept inline and combined through
//! `i128` intermediates; anything larger is promoted to a boxed
//! [`BigRational`] and demoted again as soon as it fits. The representation
//! is canonical (positive denominator, reduced, small whenever possible), so
//! derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    /// `den > 0`, `gcd(num, den) == 1`, `num != i64::MIN`.
    Small {
        num: i64,
        den: i64,
    },
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Scalar(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small { num: 0, den: 1 });
    pub const ONE: Scalar = Scalar(Repr::Small { num: 1, den: 1 });

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(v: i64) -> Self {
        if v == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(v)));
        }
        Scalar(Repr::Small { num: v, den: 1 })
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Self::ZERO;
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128);
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        if fits(num) && fits(den) {
            Scalar(Repr::Small { num: num as i64, den: den as i64 })
        } else {
            Scalar(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))))
        }
    }

    /// Canonicalizes a big rational, demoting it when it fits.
    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Scalar(Repr::Small { num: n, den: d });
            }
        }
        Scalar(Repr::Big(Box::new(r)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(v))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// The value as an `i64` when it is an integer in the inline range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => {
                assert!(*num != 0, "reciprocal of zero");
                Self::from_i128(*den as i128, *num as i128)
            }
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power with a possibly negative exponent. Panics for `0^negative`.
    pub fn powi(&self, exp: i32) -> Scalar {
        if exp >= 0 {
            self.pow(exp as u32)
        } else {
            self.recip().pow(exp.unsigned_abs())
        }
    }

    /// Rough bit size, used to pick cheap elimination pivots.
    pub fn size_hint(&self) -> u64 {
        match &self.0 {
            Repr::Small { num, den } => (64 - num.unsigned_abs().leading_zeros() + 64 - den.leading_zeros()) as u64,
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    /// Greatest common divisor of two integers (non-negative result).
    /// Panics on non-integral input.
    pub fn gcd_int(&self, other: &Scalar) -> Scalar {
        assert!(self.is_integer() && other.is_integer());
        match (&self.0, &other.0) {
            (Repr::Small { num: a, .. }, Repr::Small { num: b, .. }) => {
                let g = gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128);
                Self::from_i128(g as i128, 1)
            }
            _ => Self::from_bigint(self.numer().gcd(&other.numer())),
        }
    }

    /// Least common multiple of two positive integers.
    pub fn lcm_int(&self, other: &Scalar) -> Scalar {
        assert!(self.is_integer() && other.is_integer());
        match (&self.0, &other.0) {
            (Repr::Small { num: a, .. }, Repr::Small { num: b, .. }) => {
                let (a, b) = (a.unsigned_abs() as u128, b.unsigned_abs() as u128);
                if a == 0 || b == 0 {
                    return Scalar::zero();
                }
                let l = a / gcd_u128(a, b) * b;
                if l <= i128::MAX as u128 {
                    return Self::from_i128(l as i128, 1);
                }
                Self::from_bigint(BigInt::from(l))
            }
            _ => Self::from_bigint(self.numer().lcm(&other.numer())),
        }
    }

    /// Exact division of two integers known to divide evenly.
    pub fn div_exact_int(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => {
                debug_assert!(*b != 0 && a % b == 0);
                Self::from_int(a / b)
            }
            _ => self / other,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn big_op(a: &Scalar, b: &Scalar, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Scalar {
        Self::from_big(f(&a.to_big(), &b.to_big()))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => {
                Scalar::from_i128(*a as i128 + *c as i128, 1)
            }
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Scalar::from_i128(a + c, b)
                } else {
                    Scalar::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Scalar::big_op(self, rhs, |x, y| x + y),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => {
                Scalar::from_i128(*a as i128 - *c as i128, 1)
            }
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Scalar::from_i128(a - c, b)
                } else {
                    Scalar::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Scalar::big_op(self, rhs, |x, y| x - y),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: 0, .. }, _) | (_, Repr::Small { num: 0, .. }) => Scalar::zero(),
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => {
                Scalar::from_i128(*a as i128 * *c as i128, 1)
            }
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Scalar::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Scalar::big_op(self, rhs, |x, y| x * y),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Scalar::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Scalar::big_op(self, rhs, |x, y| x / y),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => Scalar(Repr::Small { num: -num, den: *den }),
            Repr::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_int(v as i64)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a string is not of the form `int` or `int/posint`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let valid_int = |x: &str, signed: bool| {
            let digits = if signed { x.strip_prefix(['-', '+']).unwrap_or(x) } else { x };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(num, true) {
            return Err(err());
        }
        let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| err())?;
        let d: BigInt = match den {
            Some(d) => {
                if !valid_int(d, false) {
                    return Err(err());
                }
                d.parse().map_err(|_| err())?
            }
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(err());
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
